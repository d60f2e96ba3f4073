#pragma once

#include "einl/fields.hpp"
#include "einl/group_table.hpp"
#include "einl/matrix.hpp"
#include "einl/subspace.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace einl {

enum class CategoryKind { FiGamma, Vi, Vic };

std::string to_string(CategoryKind k);

/// One arrow of the ambient category. The payload depends on the kind:
///  - FiGamma: an injection [src] -> [tgt] (1-based images) plus a coloring
///    of the source by group-element indices;
///  - Vi: a tgt-by-src matrix of full column rank;
///  - Vic: such a matrix together with the canonical basis of a chosen
///    complement of its column space.
///
/// `enc` is a flat integer encoding (injection then coloring; matrix entries
/// column-major; complement basis rows appended row-major). It is the sort
/// key that defines the canonical order of every hom-set.
struct Morphism {
    int src = 0;
    int tgt = 0;
    CategoryKind kind = CategoryKind::FiGamma;
    std::vector<int> images;
    std::vector<uint32_t> colors;
    std::optional<Matrix<PrimeField>> mat;
    std::optional<Matrix<PrimeField>> complement;
    std::vector<uint32_t> enc;

    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.src == b.src && a.tgt == b.tgt && a.enc == b.enc;
    }
    friend std::strong_ordering operator<=>(const Morphism& a, const Morphism& b) {
        if (auto c = a.src <=> b.src; c != 0) return c;
        if (auto c = a.tgt <=> b.tgt; c != 0) return c;
        return a.enc <=> b.enc;
    }

    std::string to_string() const;
};

/// A complete hom-set in canonical (ascending) order.
struct HomSet {
    std::vector<Morphism> elems;

    size_t size() const { return elems.size(); }
    const Morphism& operator[](size_t k) const { return elems[k]; }
    /// Position in canonical order; throws if the morphism is not present.
    uint32_t index_of(const Morphism& m) const;
    std::optional<uint32_t> find(const Morphism& m) const;
};

struct Quiver {
    int max_object = 0;
    std::vector<std::pair<int, int>> arrows; // sorted, at most one per pair

    /// True exactly when the arrows are 0->1->...->max_object.
    bool is_path() const;
};

/// Enumeration guards; an over-guard request fails loudly instead of running
/// away on a hom-set that was never meant to be materialized.
struct Limits {
    size_t max_hom = 200000;
    size_t max_aut = 50000;
};

/// One of the three concrete ambient categories, truncated at `max_object`.
/// Instances are immutable after construction; the hom-set, transversal and
/// word caches fill lazily under a lock and never change once written.
class CategoryInstance {
public:
    static CategoryInstance fi_gamma(FiniteGroupTable gamma, int max_object, Limits limits = {});
    static CategoryInstance vi(uint32_t q, int max_object, Limits limits = {});
    static CategoryInstance vic(uint32_t q, int max_object, Limits limits = {});

    CategoryInstance(const CategoryInstance&) = delete;
    CategoryInstance& operator=(const CategoryInstance&) = delete;
    CategoryInstance(CategoryInstance&&) = default;
    CategoryInstance& operator=(CategoryInstance&&) = default;

    CategoryKind kind() const { return kind_; }
    int max_object() const { return max_object_; }
    const Limits& limits() const { return limits_; }
    const FiniteGroupTable& gamma() const;
    const PrimeField& field() const;
    /// Short stable name for reports, e.g. "fi", "fi_gamma(cyclic(2))", "vi(q=2)".
    std::string descriptor() const;

    /// Expected |C(i,j)| from the product formulas; used for guard checks and
    /// cross-checked against actual enumeration in the test suite.
    size_t hom_size_estimate(int i, int j) const;

    const HomSet& hom_set(int i, int j) const;
    const HomSet& aut(int j) const { return hom_set(j, j); }
    uint32_t aut_identity_index(int j) const;

    Morphism identity(int i) const;
    Morphism alpha(int i) const;
    Morphism alpha_path(int i, int j) const;

    Morphism compose(const Morphism& after, const Morphism& before) const;
    Morphism invert(const Morphism& automorphism) const;
    bool is_isomorphism(const Morphism& m) const { return m.src == m.tgt; }

    bool is_unfactorizable(const Morphism& m) const;
    Quiver underlying_quiver(int up_to) const;

    /// Generating set of C(j,j): adjacent transpositions plus one coloring
    /// generator per coordinate (FiGamma), or elementary transvections plus a
    /// scalar when q > 2 (Vi/Vic).
    const std::vector<Morphism>& aut_generators(int j) const;
    /// Factorization of an automorphism into those generators, left to right
    /// in application order (g = gen[w.back()] ... gen[w.front()] . id).
    std::vector<uint32_t> aut_word(int j, uint32_t element_index) const;

    /// For each t in hom_set(i,j), the least g with g . alpha_path(i,j) = t,
    /// or UINT32_MAX when no such g exists. Transitivity holds on (i,j) if and
    /// only if no entry is UINT32_MAX.
    const std::vector<uint32_t>& transversal(int i, int j) const;

    // Morphism factories. Each verifies the full construction invariant.
    Morphism make_fi(int i, int j, std::vector<int> images, std::vector<uint32_t> colors) const;
    Morphism make_vi(int i, int j, Matrix<PrimeField> matrix) const;
    Morphism make_vic(int i, int j, Matrix<PrimeField> matrix, const Subspace<PrimeField>& complement) const;

    /// All subspaces of dimension d in F_q^n, canonically ordered; cached.
    const std::vector<Subspace<PrimeField>>& subspaces(int n, int d) const;

private:
    CategoryInstance(CategoryKind kind, int max_object, Limits limits);

    void require_object(int i) const;
    std::unique_ptr<HomSet> enumerate(int i, int j) const;
    std::unique_ptr<HomSet> enumerate_fi(int i, int j) const;
    std::unique_ptr<HomSet> enumerate_vi_like(int i, int j) const;

    CategoryKind kind_;
    int max_object_;
    Limits limits_;
    std::optional<FiniteGroupTable> gamma_;
    std::optional<PrimeField> field_;

    mutable std::unique_ptr<std::mutex> mu_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<const HomSet>> hom_cache_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<const std::vector<uint32_t>>> transversal_cache_;
    mutable std::map<int, std::unique_ptr<const std::vector<Morphism>>> gen_cache_;
    // BFS parents over aut(j): element -> (parent element, generator index).
    mutable std::map<int, std::unique_ptr<const std::vector<std::pair<uint32_t, uint32_t>>>> word_cache_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<const std::vector<Subspace<PrimeField>>>> subspace_cache_;
};

} // namespace einl
