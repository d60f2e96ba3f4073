#include "einl/orbits.hpp"

#include "einl/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace einl {

namespace {
constexpr uint32_t kUnset = UINT32_MAX;
} // namespace

StabilizerSubgroup stabilizer(const CategoryInstance& cat, int i, int j) {
    if (i > j) throw UsageError("stabilizer: source must not exceed target");
    const HomSet& group = cat.aut(j);
    const Morphism base = cat.alpha_path(i, j);
    StabilizerSubgroup h;
    h.i = i;
    h.j = j;
    for (uint32_t g = 0; g < group.size(); ++g)
        if (cat.compose(group[g], base) == base) h.elements.push_back(g);

    // Greedy generating subset: grow until the closure is the whole list.
    std::set<uint32_t> closure{cat.aut_identity_index(j)};
    auto close = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            const std::vector<uint32_t> snapshot(closure.begin(), closure.end());
            for (uint32_t x : snapshot)
                for (uint32_t g : h.generators) {
                    const uint32_t y = group.index_of(cat.compose(group[g], group[x]));
                    if (closure.insert(y).second) grew = true;
                }
        }
    };
    for (uint32_t e : h.elements) {
        if (closure.count(e)) continue;
        h.generators.push_back(e);
        close();
        if (closure.size() == h.elements.size()) break;
    }
    if (closure.size() != h.elements.size())
        throw InvariantViolation("stabilizer element list is not closed under composition");
    return h;
}

OrbitDecomposition orbits(const CategoryInstance& cat, int i, int j) {
    const StabilizerSubgroup h = stabilizer(cat, i, j);
    const HomSet& group = cat.aut(j);
    const HomSet& hom = cat.hom_set(i, j);
    OrbitDecomposition dec;
    dec.i = i;
    dec.j = j;
    dec.orbit_of.assign(hom.size(), kUnset);
    for (uint32_t start = 0; start < hom.size(); ++start) {
        if (dec.orbit_of[start] != kUnset) continue;
        const uint32_t id = static_cast<uint32_t>(dec.orbits.size());
        std::vector<uint32_t> members;
        std::vector<uint32_t> frontier{start};
        dec.orbit_of[start] = id;
        members.push_back(start);
        // Full element list action; no Schreier machinery at this scale.
        while (!frontier.empty()) {
            std::vector<uint32_t> next;
            for (uint32_t x : frontier)
                for (uint32_t g : h.elements) {
                    const uint32_t y = hom.index_of(cat.compose(group[g], hom[x]));
                    if (dec.orbit_of[y] != kUnset) continue;
                    dec.orbit_of[y] = id;
                    members.push_back(y);
                    next.push_back(y);
                }
            frontier = std::move(next);
        }
        std::sort(members.begin(), members.end());
        dec.representatives.push_back(members.front());
        dec.orbits.push_back(std::move(members));
    }
    // Orbit sizes divide the stabilizer order (orbit-stabilizer), and the
    // orbits partition the hom-set.
    size_t covered = 0;
    for (const auto& orbit : dec.orbits) {
        if (h.order() % orbit.size() != 0)
            throw InvariantViolation("orbit size does not divide the stabilizer order");
        covered += orbit.size();
    }
    if (covered != hom.size()) throw InvariantViolation("orbits do not cover the hom-set");
    return dec;
}

std::optional<Morphism> transporter(const CategoryInstance& cat, const Morphism& a, const Morphism& b) {
    if (a.src != b.src || a.tgt != b.tgt) throw UsageError("transporter: mismatched hom-sets");
    const HomSet& group = cat.aut(a.tgt);
    for (uint32_t g = 0; g < group.size(); ++g)
        if (cat.compose(group[g], a) == b) return group[g];
    return std::nullopt;
}

MMap m_map(const CategoryInstance& cat, int i, int j) {
    if (!(i <= j && j < cat.max_object())) throw UsageError("m_map: need i <= j < max_object");
    const HomSet& hom = cat.hom_set(i, j);
    const HomSet& hom_up = cat.hom_set(i, j + 1);
    const Morphism a = cat.alpha(j);
    MMap m;
    m.i = i;
    m.j = j;
    m.target.reserve(hom.size());
    for (const auto& gamma : hom.elems) m.target.push_back(hom_up.index_of(cat.compose(a, gamma)));
    std::vector<uint32_t> sorted = m.target;
    std::sort(sorted.begin(), sorted.end());
    m.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return m;
}

MuMap mu_map(const CategoryInstance& cat, int i, int j) {
    const OrbitDecomposition src = orbits(cat, i, j);
    const OrbitDecomposition dst = orbits(cat, i, j + 1);
    const MMap m = m_map(cat, i, j);
    MuMap mu;
    mu.i = i;
    mu.j = j;
    mu.source_orbits = src.count();
    mu.target_orbits = dst.count();
    mu.orbit_target.assign(src.count(), kUnset);
    for (uint32_t o = 0; o < src.count(); ++o) {
        for (uint32_t x : src.orbits[o]) {
            const uint32_t t = dst.orbit_of[m.target[x]];
            if (mu.orbit_target[o] == kUnset) {
                mu.orbit_target[o] = t;
            } else if (mu.orbit_target[o] != t) {
                throw InvariantViolation(
                    "orbit map is not well defined at (" + std::to_string(i) + "," + std::to_string(j) +
                    "); this contradicts the defining computation and signals an encoding bug");
            }
        }
    }
    std::vector<uint32_t> sorted = mu.orbit_target;
    std::sort(sorted.begin(), sorted.end());
    mu.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    std::set<uint32_t> image(mu.orbit_target.begin(), mu.orbit_target.end());
    mu.surjective = image.size() == dst.count();
    mu.bijective = mu.injective && mu.surjective;
    return mu;
}

DoubleCosetDecomposition double_cosets(const CategoryInstance& cat, int i, int j) {
    const StabilizerSubgroup h = stabilizer(cat, i, j);
    const HomSet& group = cat.aut(j);
    DoubleCosetDecomposition dec;
    dec.i = i;
    dec.j = j;
    dec.coset_of.assign(group.size(), kUnset);
    for (uint32_t start = 0; start < group.size(); ++start) {
        if (dec.coset_of[start] != kUnset) continue;
        const uint32_t id = static_cast<uint32_t>(dec.count);
        std::vector<uint32_t> frontier{start};
        dec.coset_of[start] = id;
        dec.representatives.push_back(start);
        while (!frontier.empty()) {
            std::vector<uint32_t> next;
            for (uint32_t x : frontier)
                for (uint32_t g : h.generators) {
                    for (uint32_t y : {group.index_of(cat.compose(group[g], group[x])),
                                       group.index_of(cat.compose(group[x], group[g]))}) {
                        if (dec.coset_of[y] != kUnset) continue;
                        dec.coset_of[y] = id;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        ++dec.count;
    }
    return dec;
}

MuPrimeMap mu_prime_map(const CategoryInstance& cat, int i, int j) {
    const DoubleCosetDecomposition src = double_cosets(cat, i, j);
    const DoubleCosetDecomposition dst = double_cosets(cat, i, j + 1);
    const HomSet& group = cat.aut(j);
    const HomSet& group_up = cat.aut(j + 1);
    const HomSet& step = cat.hom_set(j, j + 1);
    const std::vector<uint32_t>& step_transversal = cat.transversal(j, j + 1);
    const Morphism alpha_j = cat.alpha(j);

    // Witness u with u . alpha_j = alpha_j . g; least such in canonical order.
    auto witness = [&](uint32_t g) -> uint32_t {
        const uint32_t t = step.index_of(cat.compose(alpha_j, group[g]));
        const uint32_t u = step_transversal[t];
        if (u == kUnset)
            throw InvariantViolation("no witness for the double-coset map at (" + std::to_string(i) + "," +
                                     std::to_string(j) + "); transitivity fails");
        return u;
    };

    MuPrimeMap mu;
    mu.i = i;
    mu.j = j;
    mu.source_cosets = src.count;
    mu.target_cosets = dst.count;
    mu.coset_target.assign(src.count, kUnset);

    const StabilizerSubgroup step_stab = stabilizer(cat, j, j + 1);
    for (uint32_t c = 0; c < src.count; ++c) {
        const uint32_t rep = src.representatives[c];
        const uint32_t u = witness(rep);
        mu.coset_target[c] = dst.coset_of[u];
        // Independence of the witness: any u' = u h' with h' fixing alpha_j
        // works equally well and must land in the same coset.
        if (!step_stab.elements.empty()) {
            const uint32_t h_alt = step_stab.elements.back();
            const uint32_t u_alt = group_up.index_of(cat.compose(group_up[u], group_up[h_alt]));
            if (dst.coset_of[u_alt] != mu.coset_target[c])
                throw InvariantViolation("double-coset map depends on the witness choice");
        }
        // Independence of the coset representative: re-run from another element.
        uint32_t alt_rep = rep;
        for (uint32_t g = static_cast<uint32_t>(group.size()); g-- > 0;) {
            if (src.coset_of[g] == c) {
                alt_rep = g;
                break;
            }
        }
        if (alt_rep != rep && dst.coset_of[witness(alt_rep)] != mu.coset_target[c])
            throw InvariantViolation("double-coset map depends on the coset representative");
    }

    std::vector<uint32_t> sorted = mu.coset_target;
    std::sort(sorted.begin(), sorted.end());
    mu.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    std::set<uint32_t> image(mu.coset_target.begin(), mu.coset_target.end());
    mu.surjective = image.size() == dst.count;
    mu.bijective = mu.injective && mu.surjective;

    // Identify cosets with orbits through g |-> g . alpha_path and check that
    // the identification is a bijection carrying one map to the other.
    const OrbitDecomposition orb_src = orbits(cat, i, j);
    const OrbitDecomposition orb_dst = orbits(cat, i, j + 1);
    const MuMap mu_orbits = mu_map(cat, i, j);
    mu.matches_orbit_route = src.count == orb_src.count() && dst.count == orb_dst.count();
    if (mu.matches_orbit_route) {
        const HomSet& hom = cat.hom_set(i, j);
        const HomSet& hom_up = cat.hom_set(i, j + 1);
        const Morphism base = cat.alpha_path(i, j);
        const Morphism base_up = cat.alpha_path(i, j + 1);
        std::vector<uint32_t> coset_to_orbit(src.count, kUnset);
        for (uint32_t g = 0; g < group.size(); ++g) {
            const uint32_t orb = orb_src.orbit_of[hom.index_of(cat.compose(group[g], base))];
            uint32_t& slot = coset_to_orbit[src.coset_of[g]];
            if (slot == kUnset) {
                slot = orb;
            } else if (slot != orb) {
                mu.matches_orbit_route = false;
            }
        }
        std::vector<uint32_t> coset_to_orbit_up(dst.count, kUnset);
        for (uint32_t g = 0; g < group_up.size(); ++g) {
            const uint32_t orb = orb_dst.orbit_of[hom_up.index_of(cat.compose(group_up[g], base_up))];
            uint32_t& slot = coset_to_orbit_up[dst.coset_of[g]];
            if (slot == kUnset) {
                slot = orb;
            } else if (slot != orb) {
                mu.matches_orbit_route = false;
            }
        }
        if (mu.matches_orbit_route) {
            // The squares commute: orbit image of the identified coset equals
            // the identified image coset.
            for (uint32_t c = 0; c < src.count; ++c) {
                if (mu_orbits.orbit_target[coset_to_orbit[c]] != coset_to_orbit_up[mu.coset_target[c]])
                    mu.matches_orbit_route = false;
            }
            std::set<uint32_t> orbit_ids(coset_to_orbit.begin(), coset_to_orbit.end());
            if (orbit_ids.size() != src.count) mu.matches_orbit_route = false;
        }
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Theta invariants
// ---------------------------------------------------------------------------

namespace {

ThetaInvariant theta_fi(const Morphism& m) {
    // (U, f|_U, c|_U) with U = preimage of [i]; one (flag, image, color)
    // triple per source point keeps the encoding fixed-width.
    ThetaInvariant inv;
    const int i = m.src;
    inv.enc.reserve(static_cast<size_t>(i) * 3);
    for (int r = 0; r < i; ++r) {
        const int image = m.images[static_cast<size_t>(r)];
        if (image <= i) {
            inv.enc.push_back(1);
            inv.enc.push_back(static_cast<uint32_t>(image));
            inv.enc.push_back(m.colors[static_cast<size_t>(r)]);
        } else {
            inv.enc.push_back(0);
            inv.enc.push_back(0);
            inv.enc.push_back(0);
        }
    }
    return inv;
}

ThetaInvariant theta_vi(const CategoryInstance& cat, const Morphism& m) {
    const PrimeField& f = cat.field();
    const int i = m.src;
    const int j = m.tgt;
    // U: span of the last j-i rows, inside F_q^i.
    std::vector<std::vector<uint32_t>> lower;
    for (int r = i; r < j; ++r) lower.push_back(m.mat->row(static_cast<size_t>(r)));
    const auto u = Subspace<PrimeField>::span(f, static_cast<size_t>(i), lower);
    ThetaInvariant inv;
    inv.enc.push_back(static_cast<uint32_t>(u.dim()));
    for (uint32_t x : u.encode()) inv.enc.push_back(x);
    // The induced map into the quotient: each top row reduced against the
    // canonical basis of U gives a canonical coset representative.
    for (int r = 0; r < i; ++r)
        for (uint32_t x : u.reduce(m.mat->row(static_cast<size_t>(r)))) inv.enc.push_back(x);
    return inv;
}

} // namespace

ThetaInvariant theta_invariant(const CategoryInstance& cat, const Morphism& m) {
    switch (cat.kind()) {
        case CategoryKind::FiGamma: return theta_fi(m);
        case CategoryKind::Vi: return theta_vi(cat, m);
        case CategoryKind::Vic: throw UsageError("theta invariant is not defined for vic");
    }
    throw UsageError("theta invariant: unknown category kind");
}

std::vector<ThetaInvariant> theta_census(const CategoryInstance& cat, int i) {
    std::vector<ThetaInvariant> out;
    if (cat.kind() == CategoryKind::FiGamma) {
        const uint32_t gamma_order = cat.gamma().order();
        const size_t n = static_cast<size_t>(i);
        // Subsets by bitmask; for each, injections U -> [i] then colorings.
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> members;
            for (int r = 0; r < i; ++r)
                if (mask & (1u << r)) members.push_back(r);
            std::vector<int> image(members.size(), 0);
            std::vector<bool> used(n + 1, false);
            std::vector<uint32_t> colors(members.size(), 0);
            auto emit = [&] {
                std::fill(colors.begin(), colors.end(), 0u);
                while (true) {
                    ThetaInvariant inv;
                    inv.enc.assign(n * 3, 0);
                    for (size_t k = 0; k < members.size(); ++k) {
                        const size_t r = static_cast<size_t>(members[k]);
                        inv.enc[r * 3] = 1;
                        inv.enc[r * 3 + 1] = static_cast<uint32_t>(image[k]);
                        inv.enc[r * 3 + 2] = colors[k];
                    }
                    out.push_back(std::move(inv));
                    size_t pos = colors.size();
                    bool rolled = true;
                    while (pos > 0) {
                        --pos;
                        if (++colors[pos] < gamma_order) {
                            rolled = false;
                            break;
                        }
                        colors[pos] = 0;
                    }
                    if (rolled) break;
                }
            };
            auto rec = [&](auto&& self, size_t k) -> void {
                if (k == members.size()) {
                    emit();
                    return;
                }
                for (int v = 1; v <= i; ++v) {
                    if (used[static_cast<size_t>(v)]) continue;
                    used[static_cast<size_t>(v)] = true;
                    image[k] = v;
                    self(self, k + 1);
                    used[static_cast<size_t>(v)] = false;
                }
            };
            rec(rec, 0);
        }
    } else if (cat.kind() == CategoryKind::Vi) {
        const PrimeField& f = cat.field();
        const size_t n = static_cast<size_t>(i);
        for (int d = 0; d <= i; ++d) {
            for (const auto& u : cat.subspaces(i, d)) {
                // Coset representatives are the vectors vanishing on the pivot
                // columns of U; enumerate row tuples and keep the surjective ones.
                std::vector<size_t> free_cols;
                {
                    std::vector<bool> pivot(n, false);
                    for (size_t r = 0; r < u.basis().rows(); ++r) {
                        size_t c = 0;
                        while (f.is_zero(u.basis().at(r, c))) ++c;
                        pivot[c] = true;
                    }
                    for (size_t c = 0; c < n; ++c)
                        if (!pivot[c]) free_cols.push_back(c);
                }
                std::vector<uint32_t> digits(n * free_cols.size(), 0);
                bool done = false;
                while (!done) {
                    std::vector<std::vector<uint32_t>> rows(n, std::vector<uint32_t>(n, 0));
                    for (size_t r = 0; r < n; ++r)
                        for (size_t k = 0; k < free_cols.size(); ++k)
                            rows[r][free_cols[k]] = digits[r * free_cols.size() + k];
                    // Surjectivity onto the quotient: rows plus U span everything.
                    auto span = Subspace<PrimeField>::span(f, n, rows).sum(u);
                    if (span.is_full()) {
                        ThetaInvariant inv;
                        inv.enc.push_back(static_cast<uint32_t>(u.dim()));
                        for (uint32_t x : u.encode()) inv.enc.push_back(x);
                        for (const auto& row : rows)
                            for (uint32_t x : row) inv.enc.push_back(x);
                        out.push_back(std::move(inv));
                    }
                    if (digits.empty()) break;
                    size_t pos = digits.size();
                    done = true;
                    while (pos > 0) {
                        --pos;
                        if (++digits[pos] < f.modulus()) {
                            done = false;
                            break;
                        }
                        digits[pos] = 0;
                    }
                }
            }
        }
    } else {
        throw UsageError("theta census is not defined for vic");
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw InvariantViolation("theta census contains duplicates");
    return out;
}

ThetaConsistency theta_consistency(const CategoryInstance& cat, int i, int j) {
    const OrbitDecomposition dec = orbits(cat, i, j);
    const HomSet& hom = cat.hom_set(i, j);
    ThetaConsistency res;
    res.i = i;
    res.j = j;
    std::map<std::vector<uint32_t>, std::set<uint32_t>> by_theta;
    for (uint32_t t = 0; t < hom.size(); ++t)
        by_theta[theta_invariant(cat, hom[t]).enc].insert(dec.orbit_of[t]);
    res.theta_classes = by_theta.size();
    res.classes_match_orbits = by_theta.size() == dec.count();
    for (const auto& [enc, orbit_ids] : by_theta)
        if (orbit_ids.size() != 1) res.classes_match_orbits = false;
    const auto census = theta_census(cat, i);
    res.census_size = census.size();
    std::set<std::vector<uint32_t>> seen;
    for (const auto& [enc, ids] : by_theta) seen.insert(enc);
    res.surjective = true;
    for (const auto& inv : census)
        if (!seen.count(inv.enc)) res.surjective = false;
    // Every observed value must occur in the census; anything else is a bug.
    for (const auto& enc : seen) {
        ThetaInvariant probe{enc};
        if (!std::binary_search(census.begin(), census.end(), probe))
            throw InvariantViolation("observed theta value missing from the census at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

TransitivityReport check_transitivity(const CategoryInstance& cat, int max_object) {
    TransitivityReport rep;
    rep.category = cat.descriptor();
    rep.max_object = max_object;
    auto transitive_at = [&](int i, int j) {
        const auto& tr = cat.transversal(i, j);
        for (uint32_t w : tr)
            if (w == kUnset) return false;
        return true;
    };
    rep.all_single_step = true;
    for (int i = 0; i < max_object; ++i) {
        const bool ok = transitive_at(i, i + 1);
        rep.single_step.push_back({i, i + 1, ok});
        rep.all_single_step = rep.all_single_step && ok;
    }
    rep.all_full = true;
    for (int i = 0; i < max_object; ++i)
        for (int j = i + 1; j <= max_object; ++j) {
            const bool ok = transitive_at(i, j);
            rep.full.push_back({i, j, ok});
            rep.all_full = rep.all_full && ok;
        }
    rep.implication_holds = !rep.all_single_step || rep.all_full;
    return rep;
}

BijectivityReport check_bijectivity(const CategoryInstance& cat, int i, int j_max) {
    if (!(i < j_max && j_max <= cat.max_object() - 1))
        throw UsageError("check_bijectivity: need i < j_max <= max_object - 1");
    BijectivityReport rep;
    rep.category = cat.descriptor();
    rep.i = i;
    rep.j_max = j_max;
    for (int j = i + 1; j <= j_max; ++j) {
        BijectivityCell cell;
        cell.j = j;
        const MuMap mu = mu_map(cat, i, j);
        const MMap m = m_map(cat, i, j);
        const MuPrimeMap mup = mu_prime_map(cat, i, j);
        cell.mu_injective = mu.injective;
        cell.mu_surjective = mu.surjective;
        cell.mu_bijective = mu.bijective;
        cell.m_injective = m.injective;
        cell.mu_prime_surjective = mup.surjective;
        cell.mu_prime_bijective = mup.bijective;
        cell.routes_agree = mup.matches_orbit_route && (mup.bijective == mu.bijective) &&
                            (mup.surjective == mu.surjective);
        cell.lemma_ok = !mu.injective || m.injective;
        cell.orbit_count_source = mu.source_orbits;
        cell.orbit_count_target = mu.target_orbits;
        rep.cells.push_back(cell);
    }
    for (size_t k = 0; k < rep.cells.size(); ++k) {
        bool tail_good = true;
        for (size_t l = k; l < rep.cells.size(); ++l)
            tail_good = tail_good && rep.cells[l].mu_bijective && rep.cells[l].m_injective;
        if (tail_good) {
            rep.onset = rep.cells[k].j;
            break;
        }
    }
    return rep;
}

} // namespace einl
