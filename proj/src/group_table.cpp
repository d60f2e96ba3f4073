#include "einl/group_table.hpp"

#include "einl/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace einl {

namespace {
constexpr uint32_t kMaxOrder = 512;
} // namespace

FiniteGroupTable::FiniteGroupTable(uint32_t n, std::vector<uint32_t> table, std::string name)
    : n_(n), table_(std::move(table)), name_(std::move(name)) {
    verify_axioms();
    compute_inverses();
    compute_generators();
}

FiniteGroupTable FiniteGroupTable::trivial() {
    return FiniteGroupTable(1, {0}, "trivial");
}

FiniteGroupTable FiniteGroupTable::cyclic(uint32_t n) {
    if (n == 0) throw UsageError("cyclic group order must be positive");
    if (n > kMaxOrder) throw UsageError("group order " + std::to_string(n) + " exceeds the table limit");
    std::vector<uint32_t> t(static_cast<size_t>(n) * n);
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return FiniteGroupTable(n, std::move(t), n == 1 ? "trivial" : "cyclic(" + std::to_string(n) + ")");
}

FiniteGroupTable FiniteGroupTable::from_stream(std::istream& in, const std::string& source_name) {
    std::string line;
    long line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            // Skip blank lines and comments.
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError(source_name + ": missing group order line", line_no);
    uint32_t n = 0;
    {
        std::istringstream ss(line);
        long long v;
        if (!(ss >> v) || v <= 0) throw ParseError(source_name + ": group order must be a positive integer", line_no);
        if (v > kMaxOrder) throw ParseError(source_name + ": group order exceeds the table limit of " + std::to_string(kMaxOrder), line_no);
        std::string rest;
        if (ss >> rest) throw ParseError(source_name + ": trailing tokens after group order", line_no);
        n = static_cast<uint32_t>(v);
    }
    std::vector<uint32_t> table;
    table.reserve(static_cast<size_t>(n) * n);
    for (uint32_t r = 0; r < n; ++r) {
        if (!next_line()) throw ParseError(source_name + ": expected " + std::to_string(n) + " table rows, got " + std::to_string(r), line_no);
        std::istringstream ss(line);
        long long v;
        uint32_t count = 0;
        while (ss >> v) {
            if (v < 0 || v >= static_cast<long long>(n))
                throw ParseError(source_name + ": table entry " + std::to_string(v) + " out of range [0," + std::to_string(n) + ")", line_no);
            table.push_back(static_cast<uint32_t>(v));
            ++count;
        }
        if (!ss.eof()) throw ParseError(source_name + ": non-numeric token in table row", line_no);
        if (count != n)
            throw ParseError(source_name + ": row has " + std::to_string(count) + " entries, expected " + std::to_string(n), line_no);
    }
    return FiniteGroupTable(n, std::move(table), source_name);
}

FiniteGroupTable FiniteGroupTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open group table file: " + path);
    return from_stream(in, path);
}

void FiniteGroupTable::verify_axioms() const {
    const uint32_t n = n_;
    // Identity at index 0, both sides.
    for (uint32_t a = 0; a < n; ++a) {
        if (mult(0, a) != a || mult(a, 0) != a)
            throw ParseError(name_ + ": index 0 is not a two-sided identity (fails at element " + std::to_string(a) + ")");
    }
    // Rows and columns are permutations (cancellation).
    for (uint32_t a = 0; a < n; ++a) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (uint32_t b = 0; b < n; ++b) {
            const uint32_t rv = mult(a, b);
            const uint32_t cv = mult(b, a);
            if (seen_row[rv]) throw ParseError(name_ + ": row " + std::to_string(a) + " is not a permutation");
            if (seen_col[cv]) throw ParseError(name_ + ": column " + std::to_string(a) + " is not a permutation");
            seen_row[rv] = true;
            seen_col[cv] = true;
        }
    }
    // Associativity, exhaustively.
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            for (uint32_t c = 0; c < n; ++c)
                if (mult(mult(a, b), c) != mult(a, mult(b, c)))
                    throw ParseError(name_ + ": associativity fails at (" + std::to_string(a) + "," +
                                     std::to_string(b) + "," + std::to_string(c) + ")");
}

void FiniteGroupTable::compute_inverses() {
    inverse_.assign(n_, 0);
    for (uint32_t a = 0; a < n_; ++a) {
        bool found = false;
        for (uint32_t b = 0; b < n_; ++b) {
            if (mult(a, b) == identity_index && mult(b, a) == identity_index) {
                inverse_[a] = b;
                found = true;
                break;
            }
        }
        if (!found) throw ParseError(name_ + ": element " + std::to_string(a) + " has no two-sided inverse");
    }
}

void FiniteGroupTable::compute_generators() {
    std::set<uint32_t> closure{identity_index};
    auto close_under = [&](const std::vector<uint32_t>& gens) {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<uint32_t> snapshot(closure.begin(), closure.end());
            for (uint32_t x : snapshot)
                for (uint32_t g : gens) {
                    if (closure.insert(mult(x, g)).second) grew = true;
                    if (closure.insert(mult(g, x)).second) grew = true;
                }
        }
    };
    for (uint32_t g = 1; g < n_; ++g) {
        if (closure.count(g)) continue;
        generators_.push_back(g);
        close_under(generators_);
        if (closure.size() == n_) break;
    }
}

} // namespace einl
