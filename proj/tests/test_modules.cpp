#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "einl/errors.hpp"
#include "einl/modules.hpp"
#include "einl/orbits.hpp"

#include <sstream>

using namespace einl;

namespace {

CategoryInstance make_fi(int max_object) {
    return CategoryInstance::fi_gamma(FiniteGroupTable::trivial(), max_object);
}

// The sum-zero submodule of M(1): generated by the difference of the first two
// canonical basis vectors in degree 2.
GradedSubmodule make_sum_zero(const GradedModule& m1) {
    QVec gen(m1.dim(2), Rational(0));
    gen[0] = Rational(1);
    gen[1] = Rational(-1);
    return submodule_generated(m1, {{2, gen}});
}

Rational coordinate_sum(const QVec& v) {
    Rational s(0);
    for (const auto& x : v) s += x;
    return s;
}

} // namespace

TEST_CASE("free module dimensions follow the hom-set counts") {
    const auto fi = make_fi(5);
    const auto m1 = GradedModule::free(fi, 1, 5);
    for (int j = 0; j <= 5; ++j) CHECK(m1.dim(j) == static_cast<size_t>(j == 0 ? 0 : j));
    const auto m0 = GradedModule::free(fi, 0, 5);
    for (int j = 0; j <= 5; ++j) CHECK(m0.dim(j) == 1);

    const auto vi = CategoryInstance::vi(2, 3);
    const auto vm1 = GradedModule::free(vi, 1, 3);
    for (int j = 1; j <= 3; ++j) CHECK(vm1.dim(j) == (1u << j) - 1);
}

TEST_CASE("free action takes basis morphisms to composed basis morphisms") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    const auto& hom12 = fi.hom_set(1, 2);
    const auto& hom13 = fi.hom_set(1, 3);
    for (const auto& gamma : fi.hom_set(2, 3).elems) {
        const QMat act = m1.morphism_action(gamma);
        for (uint32_t t = 0; t < hom12.size(); ++t) {
            QVec e(hom12.size(), Rational(0));
            e[t] = Rational(1);
            const QVec image = act.apply(e);
            const uint32_t expect = hom13.index_of(fi.compose(gamma, hom12[t]));
            for (uint32_t c = 0; c < image.size(); ++c)
                CHECK(image[c] == (c == expect ? Rational(1) : Rational(0)));
        }
    }
    // Identity morphisms act as identity matrices.
    CHECK(m1.morphism_action(fi.identity(3)) == QMat::identity(RationalField{}, 3));
}

TEST_CASE("morphism action is independent of the factorization") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    const auto& group = fi.aut(3);
    const auto h = stabilizer(fi, 2, 3);
    const Morphism base = fi.alpha_path(2, 3);
    for (const auto& gamma : fi.hom_set(2, 3).elems) {
        const QMat act = m1.morphism_action(gamma);
        // Any g with g.base = gamma, times the step actions, gives the same map.
        for (uint32_t g = 0; g < group.size(); ++g) {
            if (!(fi.compose(group[g], base) == gamma)) continue;
            const QMat alt = m1.aut_action(3, g) * m1.step_action(2);
            CHECK(alt == act);
        }
    }
    CHECK(h.order() == 1);
}

TEST_CASE("step action on the free module is injective where the hom map is") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    for (int j = 1; j < 4; ++j) {
        const auto mm = m_map(fi, 1, j);
        CHECK(mm.injective);
        CHECK(m1.step_action(j).kernel_basis().empty());
    }
}

TEST_CASE("sum-zero submodule closure matches the functional oracle") {
    const auto fi = make_fi(5);
    const auto m1 = GradedModule::free(fi, 1, 5);
    const auto x = make_sum_zero(m1);
    CHECK(x.dim(0) == 0);
    CHECK(x.dim(1) == 0);
    for (int j = 2; j <= 5; ++j) {
        CHECK(x.dim(j) == static_cast<size_t>(j - 1));
        // Oracle: post-composition takes basis to basis, so the coordinate-sum
        // functional is preserved and every member must sum to zero.
        for (size_t r = 0; r < x.space(j).dim(); ++r)
            CHECK(coordinate_sum(x.space(j).basis().row(r)) == Rational(0));
    }
    CHECK(x.is_closed());

    // Re-running the closure on the submodule's own spanning sets is a fixed point.
    std::vector<HomogeneousElement> regen;
    for (int j = 0; j <= 5; ++j)
        for (size_t r = 0; r < x.space(j).dim(); ++r) regen.push_back({j, x.space(j).basis().row(r)});
    const auto x2 = submodule_generated(m1, regen);
    for (int j = 0; j <= 5; ++j) CHECK(x2.space(j) == x.space(j));
}

TEST_CASE("empty generating set produces the zero submodule") {
    const auto fi = make_fi(3);
    const auto m1 = GradedModule::free(fi, 1, 3);
    const auto x = submodule_generated(m1, {});
    CHECK(x.is_zero());
}

TEST_CASE("free module generated by its degree-i basis is everything") {
    const auto fi = make_fi(4);
    const auto m0 = GradedModule::free(fi, 0, 4);
    QVec one{Rational(1)};
    const auto x = submodule_generated(m0, {{0, one}});
    for (int j = 0; j <= 4; ++j) CHECK(x.dim(j) == m0.dim(j));
}

TEST_CASE("rho image saturates free modules from their source degree on") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    const auto full = GradedSubmodule::full_of(m1);
    for (int j = 1; j < 4; ++j) {
        const auto rho = rho_image(full, j);
        CHECK(rho.dim() == m1.dim(j + 1));
    }
    // Degree 0 fails: nothing maps onto degree 1 from an empty space.
    CHECK(rho_image(full, 0).dim() == 0);

    const auto zero = GradedSubmodule::zero_of(m1);
    for (int j = 0; j < 4; ++j) CHECK(rho_image(zero, j).dim() == 0);

    const auto x = make_sum_zero(m1);
    for (int j = 2; j < 4; ++j) CHECK(rho_image(x, j) == x.space(j + 1));

    const auto vi = CategoryInstance::vi(2, 3);
    const auto vm1 = GradedModule::free(vi, 1, 3);
    const auto vfull = GradedSubmodule::full_of(vm1);
    for (int j = 1; j < 3; ++j) CHECK(rho_image(vfull, j).dim() == vm1.dim(j + 1));
}

TEST_CASE("finite generation verdicts") {
    const auto fi = make_fi(5);
    const auto m1 = GradedModule::free(fi, 1, 5);
    {
        const auto rep = fg_verdict(GradedSubmodule::full_of(m1));
        CHECK(rep.generator_degrees == std::vector<int>{1});
        REQUIRE(rep.window_start.has_value());
        CHECK(*rep.window_start == 1);
        CHECK(rep.finitely_generated_up_to_truncation);
        for (int j = 1; j < 5; ++j) CHECK(rep.rho_full[static_cast<size_t>(j)]);
        CHECK_FALSE(rep.rho_full[0]);
    }
    {
        const auto rep = fg_verdict(make_sum_zero(m1));
        CHECK(rep.generator_degrees == std::vector<int>{2});
        REQUIRE(rep.window_start.has_value());
        CHECK(*rep.window_start == 2);
    }
    {
        const auto rep = fg_verdict(GradedSubmodule::zero_of(m1));
        CHECK(rep.generator_degrees.empty());
        CHECK(rep.finitely_generated_up_to_truncation);
        REQUIRE(rep.window_start.has_value());
        CHECK(*rep.window_start == 0);
    }
    {
        const auto atom = GradedModule::atom(fi, 5);
        const auto rep = fg_verdict(GradedSubmodule::full_of(atom));
        CHECK(rep.generator_degrees == std::vector<int>{0});
        CHECK(rep.finitely_generated_up_to_truncation);
    }
}

TEST_CASE("generator degrees of a generated submodule come from the seed degrees") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    // Seed with a degree-2 difference and a full degree-3 basis vector.
    QVec d2(m1.dim(2), Rational(0));
    d2[0] = Rational(1);
    d2[1] = Rational(-1);
    QVec d3(m1.dim(3), Rational(0));
    d3[2] = Rational(1);
    const auto x = submodule_generated(m1, {{2, d2}, {3, d3}});
    const auto rep = fg_verdict(x);
    for (int d : rep.generator_degrees) CHECK((d == 2 || d == 3));
}

TEST_CASE("torsion of free modules vanishes; the atom is all torsion") {
    const auto fi = make_fi(4);
    const auto m1 = GradedModule::free(fi, 1, 4);
    const auto t = torsion(GradedSubmodule::full_of(m1));
    CHECK(t.is_zero());
    CHECK(t.dims() == std::vector<size_t>{0, 0, 0, 0});

    const auto atom = GradedModule::atom(fi, 4);
    const auto ta = torsion(GradedSubmodule::full_of(atom));
    CHECK(ta.dims() == std::vector<size_t>{1, 0, 0, 0});
    CHECK_FALSE(ta.is_zero());

    const auto m1b = GradedModule::free(fi, 1, 4);
    const auto xb = make_sum_zero(m1b);
    CHECK(torsion(xb).is_zero());
}

TEST_CASE("direct sums split exactly") {
    const auto fi = make_fi(4);
    auto m1a = GradedModule::free(fi, 1, 4);
    auto m1b = GradedModule::free(fi, 1, 4);
    const auto sum = GradedModule::direct_sum({std::move(m1a), std::move(m1b)});
    for (int j = 0; j <= 4; ++j) CHECK(sum.dim(j) == 2 * static_cast<size_t>(j == 0 ? 0 : j));
    REQUIRE(sum.summands().size() == 2);

    // Diagonal submodule generated by (b, b) at degree 1.
    QVec gen(sum.dim(1), Rational(0));
    gen[0] = Rational(1);
    gen[1] = Rational(1);
    const auto diag = submodule_generated(sum, {{1, gen}});
    for (int j = 1; j <= 4; ++j) CHECK(diag.dim(j) == static_cast<size_t>(j));

    const auto split = sum_and_project(diag, 1);
    CHECK(split.dims_add);
    CHECK(split.intersection.is_zero());
    for (int j = 1; j <= 4; ++j) CHECK(split.projection.dim(j) == static_cast<size_t>(j));

    // X = M(S') + 0: the projection vanishes and the intersection is X.
    std::vector<QSubspace> first_block;
    for (int j = 0; j <= 4; ++j) {
        std::vector<QVec> rows;
        for (size_t r = 0; r < static_cast<size_t>(j == 0 ? 0 : j); ++r) {
            QVec e(sum.dim(j), Rational(0));
            e[r] = Rational(1);
            rows.push_back(std::move(e));
        }
        first_block.push_back(QSubspace::span(RationalField{}, sum.dim(j), rows));
    }
    const GradedSubmodule x_first(sum, std::move(first_block));
    x_first.require_closed("first block");
    const auto split2 = sum_and_project(x_first, 1);
    CHECK(split2.dims_add);
    CHECK(split2.projection.is_zero());
    for (int j = 0; j <= 4; ++j) CHECK(split2.intersection.dim(j) == x_first.dim(j));

    // Single-summand sanity: projection is the identity view.
    const auto m1c = GradedModule::free(fi, 1, 4);
    const auto xc = make_sum_zero(m1c);
    const auto split3 = sum_and_project(xc, 0);
    CHECK(split3.dims_add);
    CHECK(split3.intersection.is_zero());
    for (int j = 0; j <= 4; ++j) CHECK(split3.projection.dim(j) == xc.dim(j));
}

TEST_CASE("generator file parsing round-trips and reports line numbers") {
    std::istringstream good(
        "# a comment\n"
        "\n"
        "2: 1 -1 0/5\n"
        "3: 1/2 2/4 -3 7\n");
    const auto elems = parse_generator_stream(good, "gens");
    REQUIRE(elems.size() == 2);
    CHECK(elems[0].degree == 2);
    CHECK(elems[0].coords == QVec{Rational(1), Rational(-1), Rational(0)});
    CHECK(elems[1].coords[1] == Rational(Int(1), Int(2)));

    std::istringstream bad("2: 1 x\n");
    try {
        parse_generator_stream(bad, "gens");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 1);
    }
    std::istringstream bad2("nodegree 1 2\n");
    CHECK_THROWS_AS(parse_generator_stream(bad2, "gens"), ParseError);
}

TEST_CASE("module constructors reject malformed data") {
    const auto fi = make_fi(2);
    // Wrong generator action count at degree 2 (S_2 has one generator).
    std::vector<size_t> dims{0, 0, 0};
    std::vector<std::vector<QMat>> gens{{}, {}, {}};
    std::vector<QMat> steps{QMat(RationalField{}, 0, 0), QMat(RationalField{}, 0, 0)};
    CHECK_THROWS_AS(GradedModule::from_data(fi, 2, dims, gens, steps), UsageError);

    // A step action that fails to intertwine: M(0) with a sign flip.
    const auto m0 = GradedModule::free(fi, 0, 2);
    std::vector<size_t> d2{1, 1, 1};
    std::vector<std::vector<QMat>> g2;
    for (int j = 0; j <= 2; ++j) {
        std::vector<QMat> acts(fi.aut_generators(j).size(), QMat::identity(RationalField{}, 1));
        g2.push_back(std::move(acts));
    }
    QMat flip(RationalField{}, 1, 1);
    flip.at(0, 0) = Rational(-1);
    std::vector<QMat> s2{flip, flip};
    // Sign flips still intertwine with identity actions, so this must build...
    const auto ok = GradedModule::from_data(fi, 2, d2, g2, s2);
    CHECK(ok.dim(1) == 1);
    // ...but a broken representation must not: act(transposition)^2 != act(id).
    QMat bad(RationalField{}, 1, 1);
    bad.at(0, 0) = Rational(2);
    std::vector<std::vector<QMat>> g3 = g2;
    g3[2][0] = bad; // the transposition of S_2 squares to the identity
    CHECK_THROWS_AS(GradedModule::from_data(fi, 2, d2, g3, s2), InvariantViolation);
}
