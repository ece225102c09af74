#include <doctest.h>

#include "helpers.hpp"
#include "reflex/ehrhart.hpp"
#include "reflex/reflexive.hpp"

using namespace reflex;
using namespace reflex::testing;

TEST_CASE("ehrhart of the square is 4t^2 + 4t + 1") {
    EhrhartPolynomial e = ehrhart(square());
    REQUIRE(e.coeffs.size() == 3);
    CHECK(e.coeffs[0] == 1);
    CHECK(e.coeffs[1] == 4);
    CHECK(e.coeffs[2] == 4);
    // direct counts (2k+1)^2
    for (long k = 0; k <= 5; ++k) CHECK(e.eval(Int(k)) == Rat((2 * k + 1) * (2 * k + 1)));
}

TEST_CASE("ehrhart of the unit segment is t + 1") {
    LatticePolytope seg = LatticePolytope::fromVertices({intVec({0}), intVec({1})});
    EhrhartPolynomial e = ehrhart(seg);
    REQUIRE(e.coeffs.size() == 2);
    CHECK(e.coeffs[0] == 1);
    CHECK(e.coeffs[1] == 1);
}

TEST_CASE("ehrhart of the quintic polytope evaluates to 126 at 1") {
    EhrhartPolynomial e = ehrhart(simplexDelta(4));
    CHECK(e.eval(1) == 126);
    CHECK(e.coeffs[0] == 1);
    // leading coefficient times n! is the degree
    CHECK(e.coeffs[4] * 24 == Rat(625));
}

TEST_CASE("delta vectors: square, quintic, segment") {
    DeltaVector sq = deltaVector(square());
    CHECK(sq.psi == std::vector<Int>{1, 6, 1});

    DeltaVector d4 = deltaVector(simplexDelta(4));
    CHECK(d4.psi == std::vector<Int>{1, 121, 381, 121, 1});
    CHECK(d4.sum() == 625);

    LatticePolytope seg = LatticePolytope::fromVertices({intVec({-1}), intVec({1})});
    CHECK(deltaVector(seg).psi == std::vector<Int>{1, 1});

    // phi is the reversal of psi with phi_0 = 0
    CHECK(sq.phi == std::vector<Int>{0, 1, 6, 1});
    CHECK(sq.phi[1] == countScaledInterior(square(), 1));
}

TEST_CASE("reciprocity on the square and the quintic polytope") {
    ReciprocityReport sq = checkReciprocity(square(), 3);
    CHECK(sq.allOk);
    CHECK(sq.rows[0].lambdaAtMinusK == 1); // Lambda(-1) = l*(square) = 1

    ReciprocityReport d4 = checkReciprocity(simplexDelta(4), 2);
    CHECK(d4.allOk);
    CHECK(d4.rows[0].interiorCount == 1); // reflexive: unique interior point

    // a polytope with no interior points in the first dilate: 0 = 0
    LatticePolytope t = poly({{0, 0}, {1, 0}, {0, 1}});
    ReciprocityReport tr = checkReciprocity(t, 2);
    CHECK(tr.allOk);
    CHECK(tr.rows[0].interiorCount == 0);
}

TEST_CASE("interpolation matches out-of-sample counts at n+1 and n+2") {
    for (const auto& p : corpus(202, 24)) {
        if (p.dim() > 3) continue; // 4d out-of-sample counts live in the acceptance suite
        EhrhartPolynomial e = ehrhart(p);
        Int k1 = Int(p.dim()) + 1, k2 = Int(p.dim()) + 2;
        CHECK(e.eval(k1) == Rat(countScaled(p, k1)));
        CHECK(e.eval(k2) == Rat(countScaled(p, k2)));
    }
}

TEST_CASE("psi is nonnegative and psi_1 = l - n - 1 across the corpus") {
    for (const auto& p : corpus(303, 24)) {
        DeltaVector dv = deltaVector(p);
        for (const auto& x : dv.psi) CHECK(x >= 0);
        CHECK(dv.psi[0] == 1);
        CHECK(dv.psi[1] == countPoints(p).l - p.dim() - 1);
        CHECK(dv.sum() == degree(p));
    }
}

TEST_CASE("psi symmetry holds exactly for the reflexive corpus members") {
    int reflexiveSeen = 0, asymmetricSeen = 0;
    for (const auto& p : corpus(404, 30)) {
        bool offsetsOne = p.originInterior();
        for (const auto& f : p.facets())
            if (f.offset != 1) offsetsOne = false;
        DeltaVector dv = deltaVector(p);
        CHECK(dv.symmetric() == offsetsOne);
        (offsetsOne ? reflexiveSeen : asymmetricSeen)++;
    }
    // both directions of the equivalence are exercised
    CHECK(reflexiveSeen > 5);
    CHECK(asymmetricSeen > 5);
}

TEST_CASE("l*(2p) = l(p) for reflexive corpus members") {
    for (const auto& p : corpus(505, 30)) {
        bool reflexive = p.originInterior();
        for (const auto& f : p.facets())
            if (f.offset != 1) reflexive = false;
        if (!reflexive) continue;
        CHECK(countScaledInterior(p, 2) == countPoints(p).l);
    }
}
