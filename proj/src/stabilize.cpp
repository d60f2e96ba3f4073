#include "einl/stabilize.hpp"

#include "einl/errors.hpp"

#include <algorithm>

namespace einl {

namespace {

constexpr uint32_t kUnset = UINT32_MAX;
const RationalField kQ{};

QVec vectorize(const QMat& m) {
    return m.data();
}

QMat matricize(const QVec& v, size_t n) {
    QMat out(kQ, n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) out.at(r, c) = v[r * n + c];
    return out;
}

} // namespace

QMat basis_permutation(const CategoryInstance& cat, int i, int j, uint32_t element_index) {
    const HomSet& hom = cat.hom_set(i, j);
    const Morphism& g = cat.aut(j)[element_index];
    QMat out(kQ, hom.size(), hom.size());
    for (uint32_t t = 0; t < hom.size(); ++t) out.at(hom.index_of(cat.compose(g, hom[t])), t) = Rational(1);
    return out;
}

HomSpace hom_space(const CategoryInstance& cat, int i, int j, const QSubspace& target) {
    const HomSet& hom = cat.hom_set(i, j);
    const size_t n = hom.size();
    if (target.ambient() != n) throw UsageError("hom_space: target must live in the degree piece");

    // Unknowns F[a][b], flattened row-major. The intertwining rows per
    // generator read F[pi(a)][pi(b)] = F[a][b]; every such row identifies two
    // unknowns, so they are eliminated first by merging variables, leaving the
    // target-containment rows (sum_a phi[a] F[a][b] = 0 per annihilator
    // functional phi and column b) as a small residual system over the merged
    // variables.
    std::vector<std::vector<uint32_t>> perms;
    for (uint32_t k = 0; k < cat.aut_generators(j).size(); ++k) {
        const Morphism& g = cat.aut_generators(j)[k];
        std::vector<uint32_t> pi(n);
        for (uint32_t t = 0; t < n; ++t) pi[t] = hom.index_of(cat.compose(g, hom[t]));
        perms.push_back(std::move(pi));
    }
    const size_t vars = n * n;
    std::vector<uint32_t> root(vars);
    for (size_t v = 0; v < vars; ++v) root[v] = static_cast<uint32_t>(v);
    auto find = [&](uint32_t v) {
        while (root[v] != v) {
            root[v] = root[root[v]];
            v = root[v];
        }
        return v;
    };
    for (const auto& pi : perms)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                const uint32_t x = find(static_cast<uint32_t>(a * n + b));
                const uint32_t y = find(pi[a] * static_cast<uint32_t>(n) + pi[b]);
                if (x != y) root[std::max(x, y)] = std::min(x, y);
            }
    std::vector<uint32_t> class_of(vars);
    std::vector<uint32_t> class_rep;
    for (size_t v = 0; v < vars; ++v) {
        const uint32_t r = find(static_cast<uint32_t>(v));
        if (r == v) {
            class_of[v] = static_cast<uint32_t>(class_rep.size());
            class_rep.push_back(r);
        }
    }
    for (size_t v = 0; v < vars; ++v) class_of[v] = class_of[find(static_cast<uint32_t>(v))];
    const size_t merged = class_rep.size();

    std::vector<QVec> annihilators;
    if (!target.is_full()) annihilators = target.basis().kernel_basis();
    QMat residual(kQ, annihilators.size() * n, merged);
    size_t row = 0;
    for (const auto& phi : annihilators)
        for (size_t b = 0; b < n; ++b) {
            for (size_t a = 0; a < n; ++a) {
                const size_t cls = class_of[a * n + b];
                residual.at(row, cls) = residual.at(row, cls) + phi[a];
            }
            ++row;
        }

    HomSpace out;
    out.i = i;
    out.j = j;
    out.source_dim = n;
    for (const auto& reduced_vec : residual.kernel_basis()) {
        QVec full(vars, Rational(0));
        for (size_t v = 0; v < vars; ++v) full[v] = reduced_vec[class_of[v]];
        out.basis.push_back(matricize(full, n));
    }

    // Construction invariant: every basis map is equivariant and lands in the target.
    for (const auto& f : out.basis) {
        for (uint32_t k = 0; k < cat.aut_generators(j).size(); ++k) {
            const QMat p = basis_permutation(cat, i, j, cat.aut(j).index_of(cat.aut_generators(j)[k]));
            if (!(f * p == p * f)) throw InvariantViolation("hom_space basis map is not equivariant");
        }
        for (size_t b = 0; b < n; ++b)
            if (!target.contains(f.col(b))) throw InvariantViolation("hom_space basis map leaves the target");
    }
    return out;
}

HomSpace end_space(const CategoryInstance& cat, int i, int j) {
    return hom_space(cat, i, j, QSubspace::full(kQ, cat.hom_set(i, j).size()));
}

EndBasis end_basis(const CategoryInstance& cat, int i, int j) {
    EndBasis out;
    out.i = i;
    out.j = j;
    out.orbit_data = orbits(cat, i, j);
    const HomSet& hom = cat.hom_set(i, j);
    const HomSet& group = cat.aut(j);
    const auto& tr = cat.transversal(i, j);
    const size_t n = hom.size();

    for (const auto& orbit : out.orbit_data.orbits) {
        QMat f(kQ, n, n);
        const Rational weight(Int(1), Int(static_cast<long long>(orbit.size())));
        for (uint32_t t = 0; t < n; ++t) {
            const uint32_t g = tr[t];
            if (g == kUnset)
                throw InvariantViolation("transitivity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                                         "); the orbit-averaged endomorphisms are undefined");
            for (uint32_t member : orbit) {
                const uint32_t image = hom.index_of(cat.compose(group[g], hom[member]));
                f.at(image, t) = f.at(image, t) + weight;
            }
        }
        out.f.push_back(std::move(f));
    }

    // Equivariance of each averaged map, on every generator.
    for (const auto& f : out.f)
        for (const auto& gen : cat.aut_generators(j)) {
            const QMat p = basis_permutation(cat, i, j, group.index_of(gen));
            if (!(f * p == p * f)) throw InvariantViolation("orbit-averaged endomorphism is not equivariant");
        }

    // The averaged maps must be a basis of the solved endomorphism space:
    // same count, independent, identical spans.
    const HomSpace solved = end_space(cat, i, j);
    std::vector<QVec> rows;
    for (const auto& f : out.f) rows.push_back(vectorize(f));
    const QSubspace averaged_span = QSubspace::span(kQ, n * n, rows);
    if (averaged_span.dim() != out.f.size())
        throw InvariantViolation("orbit-averaged endomorphisms are linearly dependent");
    std::vector<QVec> solved_rows;
    for (const auto& f : solved.basis) solved_rows.push_back(vectorize(f));
    if (!(averaged_span == QSubspace::span(kQ, n * n, solved_rows)))
        throw InvariantViolation("orbit-averaged endomorphisms do not span the solved endomorphism space");
    return out;
}

void averaging_check(const std::vector<std::vector<uint32_t>>& group_perms, const std::vector<uint32_t>& subset) {
    if (group_perms.empty()) throw UsageError("averaging_check: empty group");
    const size_t n = group_perms.front().size();
    if (subset.empty()) throw UsageError("averaging_check: empty subset");
    for (uint32_t x : subset)
        if (x >= n) throw UsageError("averaging_check: subset element out of range");
    // Transitivity of the action is a precondition of the identity.
    {
        std::vector<bool> reached(n, false);
        reached[0] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t x = 0; x < n; ++x) {
                if (!reached[x]) continue;
                for (const auto& p : group_perms)
                    if (!reached[p[x]]) {
                        reached[p[x]] = true;
                        grew = true;
                    }
            }
        }
        for (bool r : reached)
            if (!r) throw UsageError("averaging_check: the action is not transitive");
    }
    const Rational subset_weight(Int(1), Int(static_cast<long long>(subset.size())));
    QVec subset_avg(n, Rational(0));
    for (uint32_t x : subset) subset_avg[x] += subset_weight;
    QVec lhs(n, Rational(0));
    for (const auto& p : group_perms)
        for (size_t x = 0; x < n; ++x) lhs[p[x]] += subset_avg[x];
    const Rational group_weight(Int(1), Int(static_cast<long long>(group_perms.size())));
    for (auto& v : lhs) v *= group_weight;
    const Rational full_weight(Int(1), Int(static_cast<long long>(n)));
    for (size_t x = 0; x < n; ++x)
        if (!(lhs[x] == full_weight))
            throw InvariantViolation("averaging identity fails; this would falsify a proved statement");
}

void averaging_check_on_orbit(const CategoryInstance& cat, int i, int j, const OrbitDecomposition& dec,
                              uint32_t orbit_id, const std::vector<uint32_t>& subset_positions) {
    const StabilizerSubgroup h = stabilizer(cat, i, j);
    const HomSet& hom = cat.hom_set(i, j);
    const HomSet& group = cat.aut(j);
    const auto& orbit = dec.orbits.at(orbit_id);
    std::vector<uint32_t> position_of(hom.size(), kUnset);
    for (uint32_t p = 0; p < orbit.size(); ++p) position_of[orbit[p]] = p;
    std::vector<std::vector<uint32_t>> perms;
    for (uint32_t g : h.elements) {
        std::vector<uint32_t> pi(orbit.size());
        for (uint32_t p = 0; p < orbit.size(); ++p) {
            const uint32_t image = hom.index_of(cat.compose(group[g], hom[orbit[p]]));
            if (position_of[image] == kUnset)
                throw InvariantViolation("stabilizer action leaves its own orbit");
            pi[p] = position_of[image];
        }
        perms.push_back(std::move(pi));
    }
    averaging_check(perms, subset_positions);
}

AveragingIdempotent e_idempotent(const CategoryInstance& cat, int i, int j) {
    const StabilizerSubgroup h = stabilizer(cat, i, j);
    const HomSet& hom = cat.hom_set(i, j);
    const size_t n = hom.size();
    AveragingIdempotent out;
    out.i = i;
    out.j = j;
    out.e = QMat(kQ, n, n);
    for (uint32_t g : h.elements) out.e = out.e + basis_permutation(cat, i, j, g);
    out.e = out.e.scaled(Rational(Int(1), Int(static_cast<long long>(h.order()))));

    if (!(out.e * out.e == out.e)) throw InvariantViolation("the averaging operator is not idempotent");
    const OrbitDecomposition dec = orbits(cat, i, j);
    out.orbit_count = dec.count();
    out.rank = out.e.rank();
    Rational trace(0);
    for (size_t t = 0; t < n; ++t) trace += out.e.at(t, t);
    if (!(trace == Rational(Int(static_cast<long long>(out.orbit_count)))))
        throw InvariantViolation("trace of the averaging operator is not the orbit count");
    if (out.rank != out.orbit_count)
        throw InvariantViolation("rank of the averaging operator is not the orbit count");
    // The image is exactly the fixed space: e is fixed by every element.
    for (uint32_t g : h.elements)
        if (!(basis_permutation(cat, i, j, g) * out.e == out.e))
            throw InvariantViolation("the averaging operator image is not fixed by the stabilizer");
    return out;
}

NuMap::NuMap(const CategoryInstance& cat, int i, int j)
    : cat_(&cat),
      i_(i),
      j_(j),
      mu_(mu_map(cat, i, j)),
      basis_j_(end_basis(cat, i, j)),
      basis_up_(end_basis(cat, i, j + 1)),
      e_up_(e_idempotent(cat, i, j + 1)),
      m_(m_map(cat, i, j)),
      alpha_index_j_(cat.hom_set(i, j).index_of(cat.alpha_path(i, j))),
      alpha_index_up_(cat.hom_set(i, j + 1).index_of(cat.alpha_path(i, j + 1))) {
    if (!mu_.bijective)
        throw UsageError("the orbit map at (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not bijective; the transport is only defined past the onset");
}

QVec NuMap::end_coordinates(const QMat& f) const {
    const size_t n = f.rows();
    const size_t k = basis_j_.f.size();
    QMat aug(kQ, n * n, k + 1);
    for (size_t col = 0; col < k; ++col) {
        const QVec v = vectorize(basis_j_.f[col]);
        for (size_t r = 0; r < v.size(); ++r) aug.at(r, col) = v[r];
    }
    const QVec rhs = vectorize(f);
    for (size_t r = 0; r < rhs.size(); ++r) aug.at(r, k) = rhs[r];
    const auto res = aug.rref();
    // Independent columns: pivots must be exactly the coefficient columns.
    QVec coords(k, Rational(0));
    for (size_t p = 0; p < res.pivots.size(); ++p) {
        if (res.pivots[p] == k)
            throw UsageError("map is outside the equivariant endomorphism space");
        coords[res.pivots[p]] = res.reduced.at(p, k);
    }
    return coords;
}

QMat NuMap::apply(const QMat& f) const {
    const HomSet& hom_up = cat_->hom_set(i_, j_ + 1);
    const size_t n_up = hom_up.size();

    // Route one: transport the orbit basis along the orbit bijection.
    const QVec coords = end_coordinates(f);
    QMat by_orbits(kQ, n_up, n_up);
    for (size_t o = 0; o < coords.size(); ++o) {
        if (coords[o].is_zero()) continue;
        by_orbits = by_orbits + basis_up_.f[mu_.orbit_target[o]].scaled(coords[o]);
    }

    // Route two: evaluate at the canonical composite, push one step, average,
    // then extend equivariantly along the transversal.
    const QVec at_alpha = f.col(alpha_index_j_);
    QVec pushed(n_up, Rational(0));
    for (size_t t = 0; t < at_alpha.size(); ++t) {
        if (at_alpha[t].is_zero()) continue;
        pushed[m_.target[t]] += at_alpha[t];
    }
    const QVec averaged = e_up_.e.apply(pushed);
    QMat by_formula(kQ, n_up, n_up);
    const auto& tr = cat_->transversal(i_, j_ + 1);
    for (uint32_t t = 0; t < n_up; ++t) {
        const uint32_t g = tr[t];
        if (g == kUnset) throw InvariantViolation("transitivity fails one degree up");
        const QVec column = basis_permutation(*cat_, i_, j_ + 1, g).apply(averaged);
        for (size_t r = 0; r < n_up; ++r) by_formula.at(r, t) = column[r];
    }

    if (!(by_orbits == by_formula))
        throw InvariantViolation("the two transport constructions disagree; this would falsify the "
                                 "evaluation identity for the averaged basis");
    return by_orbits;
}

bool nu_preserves_hom(const CategoryInstance& cat, int i, const GradedSubmodule& x, int j) {
    const NuMap nu(cat, i, j);
    const HomSpace hom_j = hom_space(cat, i, j, x.space(j));
    const QSubspace& target_up = x.space(j + 1);
    for (const auto& f : hom_j.basis) {
        const QMat transported = nu.apply(f);
        for (size_t b = 0; b < transported.cols(); ++b)
            if (!target_up.contains(transported.col(b))) return false;
    }
    return true;
}

MaschkeCheck maschke_strictness(const CategoryInstance& cat, int i, int j, const QSubspace& smaller,
                                const QSubspace& larger) {
    if (!larger.contains(smaller) || smaller == larger)
        throw UsageError("maschke_strictness requires a proper inclusion of targets");
    MaschkeCheck out;
    out.dim_hom_small = hom_space(cat, i, j, smaller).dim();
    out.dim_hom_large = hom_space(cat, i, j, larger).dim();
    out.strict = out.dim_hom_small < out.dim_hom_large;
    return out;
}

ChainReport chain_report(const CategoryInstance& cat, int i, const GradedSubmodule& x, int j_start, int j_end) {
    if (j_start > j_end) throw UsageError("chain_report: empty degree range");
    if (j_end > x.truncation()) throw UsageError("chain_report: range beyond the truncation");
    ChainReport rep;
    rep.i = i;
    rep.j_start = j_start;
    rep.j_end = j_end;

    // The transport is defined degree by degree only where the orbit map is
    // bijective; refuse to run below the onset rather than extrapolate.
    for (int j = j_start; j < j_end; ++j)
        if (!mu_map(cat, i, j).bijective)
            throw UsageError("chain_report requires orbit-map bijectivity on [" + std::to_string(j_start) + "," +
                             std::to_string(j_end - 1) + "]; it fails at " + std::to_string(j));

    std::vector<HomSpace> hom_x;
    std::vector<size_t> end_dims;
    for (int j = j_start; j <= j_end; ++j) {
        hom_x.push_back(hom_space(cat, i, j, x.space(j)));
        end_dims.push_back(end_space(cat, i, j).dim());
    }
    rep.bound = end_dims.front();

    for (int j = j_start; j <= j_end; ++j) {
        const size_t idx = static_cast<size_t>(j - j_start);
        ChainDegree cell;
        cell.j = j;
        cell.dim_hom_x = hom_x[idx].dim();
        cell.dim_end = end_dims[idx];
        if (j < j_end) {
            const NuMap nu(cat, i, j);
            // Bottom row: the transported orbit basis must again be a basis.
            const EndBasis eb = end_basis(cat, i, j);
            std::vector<QVec> transported;
            for (const auto& f : eb.f) transported.push_back(f.data());
            std::vector<QVec> images;
            for (const auto& f : eb.f) images.push_back(nu.apply(f).data());
            const size_t n_up = cat.hom_set(i, j + 1).size();
            const QSubspace image_span = QSubspace::span(kQ, n_up * n_up, images);
            cell.nu_bijective_on_end =
                image_span.dim() == eb.f.size() && eb.f.size() == end_space(cat, i, j + 1).dim();
            // Top row: transported Hom(X) basis stays independent and lands in
            // the next Hom(X) space (the commuting square).
            std::vector<QVec> hom_images;
            cell.square_commutes = true;
            std::vector<QVec> next_rows;
            for (const auto& f : hom_x[idx + 1].basis) next_rows.push_back(f.data());
            const QSubspace next_span = QSubspace::span(kQ, n_up * n_up, next_rows);
            for (const auto& f : hom_x[idx].basis) {
                const QMat image = nu.apply(f);
                hom_images.push_back(image.data());
                if (!next_span.contains(image.data())) cell.square_commutes = false;
            }
            cell.nu_injective_on_hom =
                QSubspace::span(kQ, n_up * n_up, hom_images).dim() == hom_x[idx].dim();
        }
        // Strictness spot checks at this degree, where the inclusions are proper.
        const QSubspace zero = QSubspace::zero(kQ, x.space(j).ambient());
        const QSubspace full = QSubspace::full(kQ, x.space(j).ambient());
        cell.maschke_strict_zero_pair = true;
        if (x.space(j).dim() > 0) {
            const auto chk = maschke_strictness(cat, i, j, zero, x.space(j));
            cell.maschke_strict_zero_pair = cell.maschke_strict_zero_pair && chk.strict;
        }
        if (x.space(j).dim() < full.dim()) {
            const auto chk = maschke_strictness(cat, i, j, x.space(j), full);
            cell.maschke_strict_zero_pair = cell.maschke_strict_zero_pair && chk.strict;
        }
        rep.degrees.push_back(cell);
    }

    rep.bound_holds = true;
    for (const auto& cell : rep.degrees) rep.bound_holds = rep.bound_holds && cell.dim_hom_x <= rep.bound;
    rep.dims_nondecreasing = true;
    for (size_t k = 1; k < rep.degrees.size(); ++k)
        if (rep.degrees[k].dim_hom_x < rep.degrees[k - 1].dim_hom_x) rep.dims_nondecreasing = false;
    rep.all_pass = rep.bound_holds && rep.dims_nondecreasing;
    for (const auto& cell : rep.degrees)
        rep.all_pass = rep.all_pass && cell.nu_bijective_on_end && cell.nu_injective_on_hom &&
                       cell.square_commutes && cell.maschke_strict_zero_pair;
    if (!rep.all_pass)
        throw InvariantViolation("stabilization chain verdicts failed; each would contradict a proved statement");
    return rep;
}

} // namespace einl
