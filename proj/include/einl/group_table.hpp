#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace einl {

/// Finite group given by its multiplication table. The identity must sit at
/// index 0; all group axioms are verified at construction, so a loaded table
/// can be trusted afterwards.
class FiniteGroupTable {
public:
    static constexpr uint32_t identity_index = 0;

    static FiniteGroupTable trivial();
    static FiniteGroupTable cyclic(uint32_t n);
    /// Format: first line n, then n lines of n space-separated 0-based indices;
    /// entry (g,h) is the index of g*h.
    static FiniteGroupTable from_stream(std::istream& in, const std::string& source_name);
    static FiniteGroupTable load_file(const std::string& path);

    uint32_t order() const { return n_; }
    uint32_t mult(uint32_t a, uint32_t b) const { return table_[a * n_ + b]; }
    uint32_t inverse(uint32_t a) const { return inverse_[a]; }

    /// Small generating set found greedily in index order; empty for the
    /// trivial group.
    const std::vector<uint32_t>& generating_set() const { return generators_; }

    const std::string& name() const { return name_; }

private:
    FiniteGroupTable(uint32_t n, std::vector<uint32_t> table, std::string name);

    void verify_axioms() const;
    void compute_inverses();
    void compute_generators();

    uint32_t n_;
    std::vector<uint32_t> table_;
    std::vector<uint32_t> inverse_;
    std::vector<uint32_t> generators_;
    std::string name_;
};

} // namespace einl
