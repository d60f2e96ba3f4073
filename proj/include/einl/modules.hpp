#pragma once

#include "einl/category.hpp"
#include "einl/rational.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace einl {

using QMat = Matrix<RationalField>;
using QVec = std::vector<Rational>;
using QSubspace = Subspace<RationalField>;

/// A degree-homogeneous element: coordinates against the canonical basis of
/// the degree-`degree` piece of its module.
struct HomogeneousElement {
    int degree = 0;
    QVec coords;
};

/// Parses lines of the form "degree: c1 c2 ... cd" with exact rational
/// coordinates; blank lines and '#' comments are ignored.
std::vector<HomogeneousElement> parse_generator_stream(std::istream& in, const std::string& source_name);
std::vector<HomogeneousElement> parse_generator_file(const std::string& path);

/// Truncated graded module over the rationals: one vector space per degree up
/// to the truncation bound, generator actions for every automorphism group,
/// and one action matrix per degree for the canonical step morphism.
///
/// Construction verifies, exactly: shapes; the representation property on all
/// generator pairs; and the intertwining relation u . step = step . g between
/// each degree and the next, with u the canonical witness for g.
class GradedModule {
public:
    static GradedModule free(const CategoryInstance& cat, int source, int trunc);
    static GradedModule direct_sum(std::vector<GradedModule> parts);
    /// Q in degree 0 and nothing elsewhere; the step action out of degree 0 is zero.
    static GradedModule atom(const CategoryInstance& cat, int trunc);
    static GradedModule zero(const CategoryInstance& cat, int trunc);
    static GradedModule from_data(const CategoryInstance& cat, int trunc, std::vector<size_t> dims,
                                  std::vector<std::vector<QMat>> generator_actions,
                                  std::vector<QMat> step_actions);

    const CategoryInstance& category() const { return *cat_; }
    int truncation() const { return trunc_; }
    size_t dim(int j) const;
    const QMat& generator_action(int j, size_t gen_index) const;
    /// V_j -> V_{j+1}; defined for j < truncation().
    const QMat& step_action(int j) const;

    /// Matrix of an arbitrary automorphism of object j, by the shortest
    /// generator word (or directly by basis bookkeeping for free sums).
    QMat aut_action(int j, uint32_t element_index) const;
    /// Matrix of any morphism, factored as (group element) . (step path);
    /// throws InvariantViolation when no factorization exists.
    QMat morphism_action(const Morphism& gamma) const;

    /// Source object when the module is a single free module M(i).
    std::optional<int> free_source() const { return free_source_; }

    struct Summand {
        int source = 0;                 // M(source)
        std::vector<size_t> offset;     // per-degree block offset
        std::vector<size_t> block_dim;  // per-degree block dimension
    };
    /// Summand layout; a single free module reports one summand.
    const std::vector<Summand>& summands() const { return summands_; }

private:
    GradedModule(const CategoryInstance& cat, int trunc);
    void verify() const;

    const CategoryInstance* cat_;
    int trunc_;
    std::vector<size_t> dims_;
    std::vector<std::vector<QMat>> gen_actions_;
    std::vector<QMat> step_actions_;
    std::optional<int> free_source_;
    std::vector<Summand> summands_;
};

/// Graded subspace of a parent module, one subspace per degree in parent
/// coordinates. The parent must outlive the submodule.
class GradedSubmodule {
public:
    GradedSubmodule(const GradedModule& parent, std::vector<QSubspace> degrees);
    static GradedSubmodule full_of(const GradedModule& parent);
    static GradedSubmodule zero_of(const GradedModule& parent);

    const GradedModule& parent() const { return *parent_; }
    int truncation() const { return parent_->truncation(); }
    size_t dim(int j) const { return space(j).dim(); }
    const QSubspace& space(int j) const;
    bool is_zero() const;

    /// Exact closure under every generator action and every step action;
    /// false return pinpoints nothing, callers wanting diagnostics use
    /// require_closed.
    bool is_closed() const;
    void require_closed(const std::string& what) const;

    friend bool operator==(const GradedSubmodule& a, const GradedSubmodule& b) {
        return a.parent_ == b.parent_ && a.degrees_ == b.degrees_;
    }

private:
    const GradedModule* parent_;
    std::vector<QSubspace> degrees_;
};

/// Smallest closed graded family containing the given homogeneous elements:
/// seeds the spans, then alternates group closure with pushes through the
/// step maps, in one upward sweep.
GradedSubmodule submodule_generated(const GradedModule& parent, const std::vector<HomogeneousElement>& gens);

/// Image of degree j in degree j+1 under all one-step morphism actions.
/// Computed twice: directly over C(j,j+1), and as the group closure of the
/// step image; the two must agree exactly.
QSubspace rho_image(const GradedSubmodule& x, int j);

struct FGReport {
    int truncation = 0;
    std::vector<bool> rho_full;          // index j in [0, truncation)
    std::vector<int> generator_degrees;  // degree 0 content plus failures
    /// Least w with no failure in [w, truncation); absent when degree
    /// truncation-1 itself fails.
    std::optional<int> window_start;
    bool finitely_generated_up_to_truncation = false;
    /// Wording for reports; never claims anything past the truncation.
    std::string caveat;
};

FGReport fg_verdict(const GradedSubmodule& x);

struct TorsionReport {
    int degrees_computed = 0;        // kernels for j in [0, degrees_computed)
    std::vector<QSubspace> kernels;  // parent coordinates
    std::vector<size_t> dims() const;
    bool is_zero() const;
};

/// Degreewise kernels of the step actions, verified to be closed under the
/// group actions and killed by every one-step morphism; a closure failure is
/// a hard error because it contradicts the defining computation.
TorsionReport torsion(const GradedSubmodule& x);

/// Split data for a submodule of a direct sum: the intersection with the
/// complement of the chosen summand, the projection onto that summand, and
/// the exactness check dim X_j = dim (X cap M(S'))_j + dim p_s(X)_j.
struct SumDecomposition {
    GradedSubmodule intersection;                    // submodule of the sum parent
    std::shared_ptr<const GradedModule> target;      // the chosen summand, rebuilt as M(deg s)
    GradedSubmodule projection;                      // submodule of *target
    bool dims_add = false;
};

SumDecomposition sum_and_project(const GradedSubmodule& x, size_t summand_index);

} // namespace einl
