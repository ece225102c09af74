#include <doctest.h>

#include "helpers.hpp"
#include "reflex/lattice_points.hpp"
#include "reflex/linalg.hpp"

#include <random>

using namespace reflex;
using namespace reflex::testing;

namespace {

IntMat randomMatrix(Index rows, Index cols, std::mt19937_64& rng, long spread = 5) {
    IntMat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(rng() % (2 * spread + 1)) - spread;
    return m;
}

Int det2(const IntMat& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

RatMat toRat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

} // namespace

TEST_CASE("hnf identity and zero") {
    IntMat id = IntMat::Zero(3, 3);
    for (Index i = 0; i < 3; ++i) id(i, i) = 1;
    auto r = hnf(id);
    CHECK(r.h == id);
    CHECK(r.u == id);

    IntMat z = IntMat::Zero(2, 2);
    auto rz = hnf(z);
    CHECK(rz.h == z);
    IntMat id2 = IntMat::Zero(2, 2);
    id2(0, 0) = id2(1, 1) = 1;
    CHECK(rz.u == id2);
}

TEST_CASE("hnf 2x2 example") {
    IntMat m = intMat(2, 2, {2, 4, 6, 8});
    auto r = hnf(m);
    CHECK(r.u * m == r.h);
    CHECK(abs(det2(r.u)) == 1);
    CHECK(r.h(0, 0) > 0);
    CHECK(r.h(1, 1) > 0);
    CHECK(r.h(1, 0) == 0);
    // entries above the pivot reduced into [0, pivot)
    CHECK(r.h(0, 1) >= 0);
    CHECK(r.h(0, 1) < r.h(1, 1));
    CHECK(r.h == intMat(2, 2, {2, 0, 0, 4}));
}

TEST_CASE("hnf is canonical under unimodular row action") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        IntMat m = randomMatrix(3, 4, rng);
        IntMat u = randomUnimodular(3, rng);
        CHECK(hnfOf(u * m) == hnfOf(m));
        auto r = hnf(m);
        CHECK(r.u * m == r.h);
    }
}

TEST_CASE("snf examples") {
    IntMat d = intMat(2, 2, {5, 0, 0, 5});
    auto inv = snf(d);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 5);
    CHECK(inv[1] == 5);

    // vertex images of the quintic mirror map: rows 5 e_i - (1,1,1,1)
    IntMat quintic(4, 4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) quintic(i, j) = (i == j) ? 4 : -1;
    auto qinv = snf(quintic);
    REQUIRE(qinv.size() == 4);
    CHECK(qinv[0] == 1);
    CHECK(qinv[1] == 5);
    CHECK(qinv[2] == 5);
    CHECK(qinv[3] == 5);

    std::mt19937_64 rng(11);
    IntMat u = randomUnimodular(4, rng);
    auto uinv = snf(u);
    for (const auto& x : uinv) CHECK(x == 1);
}

TEST_CASE("snf divisibility chain and unimodular invariance") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        IntMat m = randomMatrix(3, 4, rng);
        auto inv = snf(m);
        for (size_t i = 0; i + 1 < inv.size(); ++i) {
            if (inv[i + 1] == 0) continue;
            REQUIRE(inv[i] != 0);
            CHECK(inv[i + 1] % inv[i] == 0);
        }
        IntMat u = randomUnimodular(3, rng);
        IntMat v = randomUnimodular(4, rng);
        CHECK(snf(u * m) == inv);
        CHECK(snf(m * v) == inv);
    }
}

TEST_CASE("kernelRows spans the integer kernel") {
    IntMat a = intMat(2, 3, {1, 2, 3, 2, 4, 6});
    IntMat k = kernelRows(a);
    REQUIRE(k.rows() == 2);
    for (Index i = 0; i < k.rows(); ++i)
        CHECK((a * k.row(i).transpose()).isZero());
}

TEST_CASE("solve_rational") {
    RatMat a(2, 2), b(2, 1);
    a << Rat(1), Rat(2), Rat(3), Rat(4);
    b << Rat(5), Rat(6);
    auto x = solveRational(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);

    // inconsistent system
    RatMat a2(2, 1), b2(2, 1);
    a2 << Rat(1), Rat(2);
    b2 << Rat(1), Rat(3);
    CHECK(!solveRational(a2, b2).has_value());

    // underdetermined, exact solution with free variable
    RatMat a3(1, 3), b3(1, 1);
    a3 << Rat(2), Rat(3), Rat(5);
    b3 << Rat(7);
    auto x3 = solveRational(a3, b3);
    REQUIRE(x3.has_value());
    CHECK(a3 * *x3 == b3);
}

TEST_CASE("rank basics") {
    RatMat z = RatMat::Zero(3, 3);
    CHECK(rank(z) == 0);

    RatMat id = RatMat::Zero(4, 4);
    for (Index i = 0; i < 4; ++i) id(i, i) = 1;
    CHECK(rank(id) == 4);

    RatMat rep(3, 3);
    rep << Rat(1), Rat(2), Rat(3), Rat(1), Rat(2), Rat(3), Rat(0), Rat(1), Rat(1);
    CHECK(rank(rep) == 2);
}

TEST_CASE("modular rank is a lower bound, equal on the corpus") {
    std::mt19937_64 rng(17);
    RankMode mod = RankMode::Modular(17);
    CHECK(mod.prime > (1ULL << 60));
    for (int rep = 0; rep < 20; ++rep) {
        IntMat m = randomMatrix(4, 6, rng);
        Index ex = rank(toRat(m));
        Index md = rank(toRat(m), mod);
        CHECK(md <= ex);
        CHECK(md == ex); // overwhelming probability at 62-bit primes
    }
}

TEST_CASE("modular rank requires a large prime") {
    RatMat id = RatMat::Zero(2, 2);
    id(0, 0) = id(1, 1) = 1;
    CHECK_THROWS_AS(rank(id, RankMode::ModularWithPrime(97, 0)), PreconditionError);
}

TEST_CASE("primeFromSeed is deterministic and in range") {
    CHECK(primeFromSeed(0) == primeFromSeed(0));
    for (std::uint64_t s : {0ULL, 1ULL, 42ULL}) {
        auto p = primeFromSeed(s);
        CHECK(p > (1ULL << 60));
        CHECK(p < (1ULL << 62));
    }
}

TEST_CASE("lattice points: square, simplex, scaled square") {
    Box box{intVec({-1, -1}), intVec({1, 1})};
    std::vector<HalfSpace> square{{intVec({1, 0}), Int(1)},
                                  {intVec({-1, 0}), Int(1)},
                                  {intVec({0, 1}), Int(1)},
                                  {intVec({0, -1}), Int(1)}};
    auto pts = latticePointsIn(square, box);
    CHECK(pts.size() == 9);
    // lexicographic order
    for (size_t i = 1; i < pts.size(); ++i) CHECK(lexLess(pts[i - 1], pts[i]));

    std::vector<HalfSpace> simplex{{intVec({1, 0}), Int(0)},
                                   {intVec({0, 1}), Int(0)},
                                   {intVec({-1, -1}), Int(1)}};
    CHECK(latticePointsIn(simplex, Box{intVec({0, 0}), intVec({1, 1})}).size() == 3);

    std::vector<HalfSpace> square2{{intVec({1, 0}), Int(0)},
                                   {intVec({0, 1}), Int(0)},
                                   {intVec({-1, 0}), Int(2)},
                                   {intVec({0, -1}), Int(2)}};
    CHECK(latticePointsIn(square2, Box{intVec({0, 0}), intVec({2, 2})}).size() == 9);
}

TEST_CASE("lattice points: unbounded system is rejected") {
    std::vector<HalfSpace> half{{intVec({1, 0}), Int(0)}};
    Box box{intVec({-3, -3}), intVec({3, 3})};
    CHECK_THROWS_AS(latticePointsInChecked(half, box), PreconditionError);
    std::vector<HalfSpace> quadrant{{intVec({1, 0}), Int(1)}, {intVec({0, 1}), Int(1)}};
    CHECK_THROWS_AS(latticePointsInChecked(quadrant, box), PreconditionError);
    std::vector<HalfSpace> bounded{{intVec({1, 0}), Int(1)},
                                   {intVec({-1, 0}), Int(1)},
                                   {intVec({0, 1}), Int(1)},
                                   {intVec({0, -1}), Int(1)}};
    CHECK(latticePointsInChecked(bounded, box).size() == 9);
}

TEST_CASE("lattice point count is unimodular invariant") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        LatticePolytope p = randomOriginPolytope(2 + static_cast<Index>(rng() % 2), rng);
        IntMat u = randomUnimodular(p.dim(), rng);
        LatticePolytope q = applyUnimodular(p, u);
        CHECK(p.latticePoints().size() == q.latticePoints().size());
        CHECK(p.latticePoints(2).size() == q.latticePoints(2).size());
    }
}

TEST_CASE("cone extreme rays") {
    // first quadrant
    IntMat a = intMat(2, 2, {1, 0, 0, 1});
    auto rays = coneExtremeRays(a);
    REQUIRE(rays.size() == 2);
    CHECK(coneIsTrivial(intMat(4, 2, {1, 0, -1, 0, 0, 1, 0, -1})));
    CHECK(!coneIsTrivial(a));
    // a line is not pointed: lineality is caught before enumeration
    CHECK(!coneIsTrivial(intMat(1, 2, {1, 0})));
}
