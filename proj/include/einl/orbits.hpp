#pragma once

#include "einl/category.hpp"

#include <optional>
#include <string>
#include <vector>

namespace einl {

/// Stabilizer of the canonical composite alpha_path(i,j) inside C(j,j),
/// stored as the full ascending element list plus a small generating subset.
struct StabilizerSubgroup {
    int i = 0;
    int j = 0;
    std::vector<uint32_t> elements;   // indices into aut(j), ascending
    std::vector<uint32_t> generators; // subset of `elements` found greedily

    size_t order() const { return elements.size(); }
};

/// Partition of C(i,j) under left multiplication by the stabilizer.
struct OrbitDecomposition {
    int i = 0;
    int j = 0;
    std::vector<std::vector<uint32_t>> orbits; // each ascending, ordered by least element
    std::vector<uint32_t> orbit_of;            // hom index -> orbit id
    std::vector<uint32_t> representatives;     // least element per orbit

    size_t count() const { return orbits.size(); }
};

/// The post-composition map C(i,j) -> C(i,j+1).
struct MMap {
    int i = 0;
    int j = 0;
    std::vector<uint32_t> target; // hom index at (i,j) -> hom index at (i,j+1)
    bool injective = false;
};

/// The induced map on stabilizer orbits.
struct MuMap {
    int i = 0;
    int j = 0;
    std::vector<uint32_t> orbit_target; // source orbit id -> target orbit id
    size_t source_orbits = 0;
    size_t target_orbits = 0;
    bool injective = false;
    bool surjective = false;
    bool bijective = false;
};

/// Double cosets H\C(j,j)/H for the stabilizer H of alpha_path(i,j).
struct DoubleCosetDecomposition {
    int i = 0;
    int j = 0;
    std::vector<uint32_t> coset_of;        // aut index -> coset id
    std::vector<uint32_t> representatives; // least element per coset
    size_t count = 0;
};

/// The induced map on double cosets, using a witness u with u.alpha_j = alpha_j.g.
struct MuPrimeMap {
    int i = 0;
    int j = 0;
    std::vector<uint32_t> coset_target;
    size_t source_cosets = 0;
    size_t target_cosets = 0;
    bool injective = false;
    bool surjective = false;
    bool bijective = false;
    /// The coset-to-orbit identification g H -> g.alpha carries this map to the
    /// orbit map exactly; verified, not assumed.
    bool matches_orbit_route = false;
};

/// Orbit classification invariant; two morphisms get equal encodings exactly
/// when they lie in the same stabilizer orbit (verified against the orbits).
struct ThetaInvariant {
    std::vector<uint32_t> enc;

    friend bool operator==(const ThetaInvariant& a, const ThetaInvariant& b) { return a.enc == b.enc; }
    friend auto operator<=>(const ThetaInvariant& a, const ThetaInvariant& b) { return a.enc <=> b.enc; }
};

struct ThetaConsistency {
    int i = 0;
    int j = 0;
    bool classes_match_orbits = false;
    bool surjective = false; // onto the full invariant census
    size_t theta_classes = 0;
    size_t census_size = 0;
};

struct TransitivityCell {
    int i = 0;
    int j = 0;
    bool transitive = false;
};

struct TransitivityReport {
    std::string category;
    int max_object = 0;
    std::vector<TransitivityCell> single_step; // (i, i+1) cells
    std::vector<TransitivityCell> full;        // all i < j <= J
    bool all_single_step = false;
    bool all_full = false;
    /// Observed agreement with the implication single-step => full.
    bool implication_holds = false;
};

struct BijectivityCell {
    int j = 0;
    bool mu_injective = false;
    bool mu_surjective = false;
    bool mu_bijective = false;
    bool m_injective = false;
    bool mu_prime_surjective = false;
    bool mu_prime_bijective = false;
    bool routes_agree = false;
    bool lemma_ok = false; // mu injective implies m injective, observed
    size_t orbit_count_source = 0;
    size_t orbit_count_target = 0;
};

struct BijectivityReport {
    std::string category;
    int i = 0;
    int j_max = 0;
    std::vector<BijectivityCell> cells; // j = i+1 .. j_max
    /// Least j0 with mu bijective and m injective for every j in [j0, j_max].
    std::optional<int> onset;
};

StabilizerSubgroup stabilizer(const CategoryInstance& cat, int i, int j);

OrbitDecomposition orbits(const CategoryInstance& cat, int i, int j);

/// Least g with g.a = b in canonical order, if one exists. Absence is a
/// transitivity counterexample, reported as a value rather than an error.
std::optional<Morphism> transporter(const CategoryInstance& cat, const Morphism& a, const Morphism& b);

MMap m_map(const CategoryInstance& cat, int i, int j);

/// Throws InvariantViolation if some orbit fails to land inside a single
/// target orbit; that would contradict the defining computation.
MuMap mu_map(const CategoryInstance& cat, int i, int j);

DoubleCosetDecomposition double_cosets(const CategoryInstance& cat, int i, int j);

/// Throws InvariantViolation when no witness u exists (transitivity violation)
/// or when the map depends on the coset or witness choices.
MuPrimeMap mu_prime_map(const CategoryInstance& cat, int i, int j);

/// Defined for FiGamma and Vi; throws UsageError for Vic.
ThetaInvariant theta_invariant(const CategoryInstance& cat, const Morphism& m);

/// Full enumeration of possible invariant values at source object i,
/// ascending and duplicate-free.
std::vector<ThetaInvariant> theta_census(const CategoryInstance& cat, int i);

ThetaConsistency theta_consistency(const CategoryInstance& cat, int i, int j);

TransitivityReport check_transitivity(const CategoryInstance& cat, int max_object);

BijectivityReport check_bijectivity(const CategoryInstance& cat, int i, int j_max);

} // namespace einl
