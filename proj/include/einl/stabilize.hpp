#pragma once

#include "einl/matrix.hpp"
#include "einl/modules.hpp"
#include "einl/orbits.hpp"
#include "einl/rational.hpp"

#include <vector>

namespace einl {

/// Space of group-equivariant linear maps from the free degree piece at (i,j)
/// into a chosen subspace of it, found as the kernel of the stacked
/// intertwining system.
struct HomSpace {
    int i = 0;
    int j = 0;
    size_t source_dim = 0;
    std::vector<QMat> basis; // deterministic order from the kernel solve

    size_t dim() const { return basis.size(); }
};

/// Equivariant maps M(i)_j -> target, target given in the canonical basis
/// coordinates of C(i,j).
HomSpace hom_space(const CategoryInstance& cat, int i, int j, const QSubspace& target);

/// Equivariant endomorphisms of M(i)_j.
HomSpace end_space(const CategoryInstance& cat, int i, int j);

/// Permutation matrix of a group element acting on the canonical basis of C(i,j).
QMat basis_permutation(const CategoryInstance& cat, int i, int j, uint32_t element_index);

/// One averaged endomorphism per stabilizer orbit; verified equivariant,
/// linearly independent, and spanning exactly the solved endomorphism space.
struct EndBasis {
    int i = 0;
    int j = 0;
    OrbitDecomposition orbit_data;
    std::vector<QMat> f; // f[o] belongs to orbit id o

    size_t dim() const { return f.size(); }
};

EndBasis end_basis(const CategoryInstance& cat, int i, int j);

/// Exact check of the averaging identity on a transitive permutation action:
/// averaging the group against the average of any nonempty subset returns the
/// full-set average. Throws InvariantViolation on failure, which would
/// falsify a proved identity.
void averaging_check(const std::vector<std::vector<uint32_t>>& group_perms, const std::vector<uint32_t>& subset);

/// Convenience adapter: the stabilizer of (i,j) acting on one of its orbits.
void averaging_check_on_orbit(const CategoryInstance& cat, int i, int j, const OrbitDecomposition& dec,
                              uint32_t orbit_id, const std::vector<uint32_t>& subset_positions);

/// The averaging idempotent of the stabilizer acting on the degree piece.
struct AveragingIdempotent {
    int i = 0;
    int j = 0;
    QMat e;
    size_t rank = 0;
    size_t orbit_count = 0; // equals trace and rank, verified exactly
};

AveragingIdempotent e_idempotent(const CategoryInstance& cat, int i, int j);

/// The transport of equivariant maps from degree j to degree j+1. Only
/// constructed when the orbit map is bijective; below that onset the
/// constructor refuses.
///
/// apply() computes the transport twice: by permuting the orbit basis, and by
/// the evaluation identity at the canonical composite extended equivariantly.
/// Any disagreement is a hard error.
class NuMap {
public:
    NuMap(const CategoryInstance& cat, int i, int j);

    const MuMap& mu() const { return mu_; }

    QMat apply(const QMat& f) const;

    /// Coordinates of an equivariant map in the orbit-endomorphism basis;
    /// throws when the map is outside the span (i.e. not equivariant).
    QVec end_coordinates(const QMat& f) const;

private:
    const CategoryInstance* cat_;
    int i_;
    int j_;
    MuMap mu_;
    EndBasis basis_j_;
    EndBasis basis_up_;
    AveragingIdempotent e_up_;
    MMap m_;
    uint32_t alpha_index_j_;
    uint32_t alpha_index_up_;
};

/// True when the transport of every basis map of Hom(M(i)_j, X_j) lands in
/// Hom(M(i)_{j+1}, X_{j+1}).
bool nu_preserves_hom(const CategoryInstance& cat, int i, const GradedSubmodule& x, int j);

struct MaschkeCheck {
    size_t dim_hom_small = 0;
    size_t dim_hom_large = 0;
    bool strict = false; // requires small proper subspace of large
};

/// Exact Hom-dimension comparison for a proper inclusion of targets.
MaschkeCheck maschke_strictness(const CategoryInstance& cat, int i, int j, const QSubspace& smaller,
                                const QSubspace& larger);

struct ChainDegree {
    int j = 0;
    size_t dim_hom_x = 0;
    size_t dim_end = 0;
    bool nu_bijective_on_end = true;  // trivially true at the last degree
    bool nu_injective_on_hom = true;  // likewise
    bool square_commutes = true;      // transported maps land in the next Hom space
    bool maschke_strict_zero_pair = true; // 0 vs X_j and X_j vs full, where proper
};

struct ChainReport {
    int i = 0;
    int j_start = 0;
    int j_end = 0;
    std::vector<ChainDegree> degrees;
    size_t bound = 0; // dim End at j_start; every dim_hom_x stays within it
    bool bound_holds = false;
    bool dims_nondecreasing = false;
    bool all_pass = false;
};

/// The stabilization certificate over [j_start, j_end]: dimensions of the Hom
/// chain, transport verdicts per step, and the uniform bound. Requires the
/// orbit maps to be bijective on [j_start, j_end - 1].
ChainReport chain_report(const CategoryInstance& cat, int i, const GradedSubmodule& x, int j_start, int j_end);

} // namespace einl
