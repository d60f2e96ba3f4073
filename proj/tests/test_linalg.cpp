#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "einl/fields.hpp"
#include "einl/matrix.hpp"
#include "einl/subspace.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

using namespace einl;

using QMat = Matrix<RationalField>;
using FMat = Matrix<PrimeField>;
using QSub = Subspace<RationalField>;
using FSub = Subspace<PrimeField>;

namespace {

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 11;
    }
};

QMat random_qmat(Lcg& rng, size_t rows, size_t cols) {
    QMat m(RationalField{}, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) {
            const long long num = static_cast<long long>(rng.next() % 11) - 5;
            const long long den = 1 + static_cast<long long>(rng.next() % 4);
            m.at(r, c) = Rational(Int(num), Int(den));
        }
    return m;
}

FMat random_fmat(Lcg& rng, const PrimeField& f, size_t rows, size_t cols) {
    FMat m(f, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<uint32_t>(rng.next() % f.modulus());
    return m;
}

} // namespace

TEST_CASE("rref of the 2x2 rational identity is itself") {
    const QMat id = QMat::identity(RationalField{}, 2);
    const auto r = id.rref();
    CHECK(r.reduced == id);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<size_t>{0, 1});
}

TEST_CASE("rref of the all-ones 2x2 matrix has rank 1") {
    QMat m(RationalField{}, 2, 2);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = Rational(1);
    const auto r = m.rref();
    CHECK(r.rank == 1);
    CHECK(r.reduced.at(0, 0) == Rational(1));
    CHECK(r.reduced.at(0, 1) == Rational(1));
    CHECK(r.reduced.at(1, 0) == Rational(0));
    CHECK(r.reduced.at(1, 1) == Rational(0));
}

TEST_CASE("rref of the 2x1 ones column over F_2") {
    const PrimeField f2(2);
    FMat m(f2, 2, 1);
    m.at(0, 0) = 1;
    m.at(1, 0) = 1;
    const auto r = m.rref();
    CHECK(r.rank == 1);
    CHECK(r.reduced.at(0, 0) == 1);
    CHECK(r.reduced.at(1, 0) == 0);
}

TEST_CASE("kernel of identity is zero, kernel of zero is everything") {
    const QMat id = QMat::identity(RationalField{}, 3);
    CHECK(id.kernel_basis().empty());
    const QMat z(RationalField{}, 2, 2);
    const auto basis = z.kernel_basis();
    CHECK(basis.size() == 2);
    CHECK(QSub::span(RationalField{}, 2, basis) == QSub::full(RationalField{}, 2));
}

TEST_CASE("kernel of [1 1] over F_2 equals the brute-force annihilated set") {
    const PrimeField f2(2);
    FMat m(f2, 1, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    // Oracle: enumerate all four vectors of F_2^2 and keep the annihilated ones.
    std::vector<std::vector<uint32_t>> annihilated;
    for (uint32_t x = 0; x < 2; ++x)
        for (uint32_t y = 0; y < 2; ++y) {
            const std::vector<uint32_t> v{x, y};
            if (m.apply(v)[0] == 0 && (x || y)) annihilated.push_back(v);
        }
    REQUIRE(annihilated.size() == 1);
    CHECK(annihilated[0] == std::vector<uint32_t>{1, 1});
    const auto k = FSub::span(f2, 2, m.kernel_basis());
    CHECK(k == FSub::span(f2, 2, annihilated));
    CHECK(k.dim() == 1);
}

TEST_CASE("complement checks on lines of F_2^2") {
    const PrimeField f2(2);
    const FSub e1 = FSub::span(f2, 2, {{1, 0}});
    const FSub e2 = FSub::span(f2, 2, {{0, 1}});
    const FSub diag = FSub::span(f2, 2, {{1, 1}});
    CHECK(is_complement(e1, e2));
    CHECK(is_complement(e1, diag));
    CHECK_FALSE(is_complement(e1, e1));
    CHECK_FALSE(is_complement(e1, FSub::zero(f2, 2)));
}

TEST_CASE("span of coordinate lines fills the rational plane") {
    const QSub s = QSub::span(RationalField{}, 2, {{Rational(1), Rational(0)}})
                       .sum(QSub::span(RationalField{}, 2, {{Rational(0), Rational(1)}}));
    CHECK(s.is_full());
}

TEST_CASE("rref is idempotent on random matrices over Q, F_2, F_3") {
    Lcg rng(42);
    for (int iter = 0; iter < 60; ++iter) {
        const size_t rows = 1 + rng.next() % 5;
        const size_t cols = 1 + rng.next() % 5;
        const QMat m = random_qmat(rng, rows, cols);
        const auto r1 = m.rref();
        const auto r2 = r1.reduced.rref();
        CHECK(r1.reduced == r2.reduced);
        CHECK(r1.rank == r2.rank);
        for (uint32_t p : {2u, 3u}) {
            const PrimeField f(p);
            const FMat fm = random_fmat(rng, f, rows, cols);
            const auto f1 = fm.rref();
            CHECK(f1.reduced.rref().reduced == f1.reduced);
        }
    }
}

TEST_CASE("rank plus kernel dimension equals column count") {
    Lcg rng(43);
    for (int iter = 0; iter < 60; ++iter) {
        const size_t rows = 1 + rng.next() % 5;
        const size_t cols = 1 + rng.next() % 5;
        const QMat m = random_qmat(rng, rows, cols);
        CHECK(m.rank() + m.kernel_basis().size() == cols);
        const PrimeField f3(3);
        const FMat fm = random_fmat(rng, f3, rows, cols);
        CHECK(fm.rank() + fm.kernel_basis().size() == cols);
        // Every kernel vector is actually annihilated.
        for (const auto& v : m.kernel_basis()) {
            for (const auto& x : m.apply(v)) CHECK(x == Rational(0));
        }
    }
}

TEST_CASE("two spanning sets of the same space store identical bases") {
    Lcg rng(44);
    for (int iter = 0; iter < 80; ++iter) {
        const size_t n = 2 + rng.next() % 4;
        const QMat m = random_qmat(rng, 1 + rng.next() % 4, n);
        std::vector<std::vector<Rational>> gens;
        for (size_t r = 0; r < m.rows(); ++r) gens.push_back(m.row(r));
        const QSub s1 = QSub::span(RationalField{}, n, gens);
        // Second spanning set: reversed order plus random combinations of the rows.
        std::vector<std::vector<Rational>> gens2(gens.rbegin(), gens.rend());
        for (int extra = 0; extra < 3; ++extra) {
            std::vector<Rational> combo(n, Rational(0));
            for (const auto& g : gens) {
                const Rational coef(Int(static_cast<long long>(rng.next() % 7) - 3),
                                    Int(static_cast<long long>(1 + rng.next() % 3)));
                for (size_t c = 0; c < n; ++c) combo[c] += coef * g[c];
            }
            gens2.push_back(std::move(combo));
        }
        const QSub s2 = QSub::span(RationalField{}, n, gens2);
        CHECK(s1 == s2);
        CHECK(s1.basis() == s2.basis());
    }
}

TEST_CASE("F_p facts, exhaustive at p in {2,3}") {
    for (uint32_t p : {2u, 3u}) {
        const PrimeField f(p);
        for (uint32_t x = 1; x < p; ++x) {
            CHECK(f.mul(x, f.inv(x)) == 1);
        }
        for (uint32_t x = 0; x < p; ++x) {
            uint32_t xp = x != 0 || p != 0 ? 0 : 0;
            // x^p by repeated multiplication.
            xp = 1 % p;
            for (uint32_t k = 0; k < p; ++k) xp = f.mul(xp, x);
            CHECK(xp == x);
        }
    }
    CHECK_THROWS_AS(PrimeField(4), UsageError);
    CHECK_THROWS_AS(PrimeField(1), UsageError);
    CHECK(PrimeField(3).primitive_root() == 2);
    CHECK(PrimeField(5).primitive_root() == 2);
    CHECK(PrimeField(7).primitive_root() == 3);
}

TEST_CASE("intersection satisfies the dimension formula") {
    Lcg rng(45);
    for (int iter = 0; iter < 60; ++iter) {
        const size_t n = 2 + rng.next() % 4;
        const QMat a = random_qmat(rng, 1 + rng.next() % 3, n);
        const QMat b = random_qmat(rng, 1 + rng.next() % 3, n);
        const QSub u = QSub::from_spanning_matrix(a);
        const QSub w = QSub::from_spanning_matrix(b);
        const QSub meet = u.intersect(w);
        const QSub join = u.sum(w);
        CHECK(meet.dim() + join.dim() == u.dim() + w.dim());
        CHECK(u.contains(meet));
        CHECK(w.contains(meet));
        CHECK(join.contains(u));
        CHECK(u.intersect(u) == u);
    }
}

TEST_CASE("matrix inverse over both fields") {
    Lcg rng(46);
    const PrimeField f3(3);
    int found = 0;
    while (found < 20) {
        const size_t n = 2 + rng.next() % 3;
        const QMat m = random_qmat(rng, n, n);
        if (m.rank() != n) continue;
        ++found;
        CHECK(m * m.inverse() == QMat::identity(RationalField{}, n));
        CHECK(m.inverse() * m == QMat::identity(RationalField{}, n));
        FMat fm = random_fmat(rng, f3, n, n);
        if (fm.rank() == n) {
            CHECK(fm * fm.inverse() == FMat::identity(f3, n));
        }
    }
    QMat singular(RationalField{}, 2, 2);
    singular.at(0, 0) = Rational(1);
    singular.at(1, 0) = Rational(1);
    CHECK_THROWS_AS(singular.inverse(), UsageError);
}

TEST_CASE("dimension mismatches are usage errors") {
    const QSub u = QSub::full(RationalField{}, 2);
    const QSub w = QSub::full(RationalField{}, 3);
    CHECK_THROWS_AS(u.sum(w), UsageError);
    CHECK_THROWS_AS((void)is_complement(u, w), UsageError);
    CHECK_THROWS_AS(u.contains(std::vector<Rational>{Rational(1)}), UsageError);
    const PrimeField f2(2), f3(3);
    const FSub a = FSub::full(f2, 2);
    const FSub b = FSub::full(f3, 2);
    CHECK_THROWS_AS(a.sum(b), UsageError);
}
