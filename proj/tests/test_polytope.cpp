#include <doctest.h>

#include "helpers.hpp"
#include "reflex/ehrhart.hpp"
#include "reflex/polytope.hpp"

#include <random>
#include <set>

using namespace reflex;
using namespace reflex::testing;

TEST_CASE("from_vertices: cross polygon has facets x +- y >= -1") {
    LatticePolytope p = crossPolygon();
    CHECK(p.dim() == 2);
    CHECK(p.vertices().size() == 4);
    REQUIRE(p.facets().size() == 4);
    for (const auto& f : p.facets()) {
        CHECK(f.offset == 1);
        CHECK(abs(f.normal[0]) == 1);
        CHECK(abs(f.normal[1]) == 1);
    }
}

TEST_CASE("from_vertices: quintic polytope has 5 facets at offset 1") {
    LatticePolytope p = simplexDelta(4);
    CHECK(p.vertices().size() == 5);
    REQUIRE(p.facets().size() == 5);
    for (const auto& f : p.facets()) {
        CHECK(f.offset == 1);
        for (const auto& v : p.vertices()) CHECK(f.normal.dot(v) >= -1);
    }
}

TEST_CASE("from_vertices: duplicates and interior points are dropped") {
    LatticePolytope p = LatticePolytope::fromVertices(
        {intVec({0, 0}), intVec({0, 0}), intVec({0, 0}), intVec({0, 0}), intVec({3, 0}),
         intVec({0, 3}), intVec({-3, -3}), intVec({1, 0})});
    CHECK(p.vertices().size() == 3);
}

TEST_CASE("from_vertices: non-full-dimensional input is rejected with the span dimension") {
    try {
        LatticePolytope::fromVertices({intVec({0, 0, 0}), intVec({1, 0, 0}), intVec({0, 1, 0})});
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("dimension 2") != std::string::npos);
    }
}

TEST_CASE("faces: cube has 12 edges, octahedron 8 triangles, simplex 10 edges") {
    CHECK(cube3().faces(1).size() == 12);
    CHECK(cube3().faces(0).size() == 8);
    CHECK(cube3().faces(2).size() == 6);
    CHECK(octahedron().faces(2).size() == 8);
    CHECK(simplexDelta(4).faces(1).size() == 10);
    // d = n returns the polytope itself
    CHECK(cube3().faces(3).size() == 1);
    CHECK(cube3().faces(3)[0].vertexIndices.size() == 8);
}

TEST_CASE("face charts span the saturated direction lattice") {
    LatticePolytope p = cube3();
    for (Index d = 0; d <= 3; ++d)
        for (const Face& f : p.faces(d)) {
            CHECK(f.dim == d);
            CHECK(f.basis.rows() == d);
            // tight facet count complements the dimension on the cube
            if (d < 3) CHECK(f.tightFacets.size() == static_cast<size_t>(3 - d));
        }
}

TEST_CASE("count_points: square, quintic, segment face") {
    PointCount sq = countPoints(square());
    CHECK(sq.l == 9);
    CHECK(sq.lStar == 1);

    CHECK(countPoints(simplexDelta(4)).l == 126);

    // edge from (0,0) to (3,0) inside a triangle
    LatticePolytope t = poly({{0, 0}, {3, 0}, {0, 3}});
    bool found = false;
    for (const Face& f : t.faces(1)) {
        PointCount pc = countPoints(t, f);
        if (pc.l == 4) {
            CHECK(pc.lStar == 2);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("degree: segment, Pick polygon, quintic") {
    LatticePolytope seg = LatticePolytope::fromVertices({intVec({0}), intVec({5})});
    CHECK(countPoints(seg).l == 6);
    CHECK(degree(seg) == 5);

    CHECK(degree(square()) == 8); // l=9, l*=1, Pick

    LatticePolytope d4 = simplexDelta(4);
    CHECK(degree(d4) == 625);
    // cross-check against the delta vector sum
    CHECK(deltaVector(d4).sum() == 625);

    CHECK_THROWS_AS(degree(d4, d4.faces(0)[0]), PreconditionError);
}

TEST_CASE("dual: square <-> cross polygon") {
    LatticePolytope sq = square();
    LatticePolytope cr = dual(sq);
    CHECK(cr.vertices().size() == 4);
    CHECK(canonicalForm(cr) == canonicalForm(crossPolygon()));
    CHECK(canonicalForm(dual(cr)) == canonicalForm(sq));
}

TEST_CASE("dual: quintic polytope") {
    LatticePolytope d4 = simplexDelta(4);
    LatticePolytope dd = dual(d4);
    CHECK(dd.vertices().size() == 5);
    CHECK(canonicalForm(dd) == canonicalForm(simplexDualDelta(4)));
}

TEST_CASE("dual: non-reflexive input is rejected with the offending facet") {
    LatticePolytope p = poly({{2, 0}, {0, 2}, {-2, -2}});
    try {
        dual(p);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
    }
    LatticePolytope shifted = poly({{1, 1}, {3, 1}, {1, 3}});
    CHECK_THROWS_AS(dual(shifted), PreconditionError);
}

TEST_CASE("dual_face: dimensions complement and incidence reverses") {
    LatticePolytope c = cube3();
    // vertex of the cube -> 2-face of the octahedron
    const Face& v = c.faces(0)[0];
    const Face& vd = dualFace(c, v);
    CHECK(vd.dim == 2);
    // facet -> vertex
    const Face& f = c.faces(2)[0];
    CHECK(dualFace(c, f).dim == 0);
    // involution via the double dual
    LatticePolytope q = dual(c);
    for (Index d = 0; d <= 2; ++d)
        for (const Face& g : c.faces(d)) {
            const Face& gd = dualFace(c, g);
            CHECK(g.dim + gd.dim == 2);
            const Face& gdd = dualFace(q, gd);
            CHECK(gdd.vertexIndices == g.vertexIndices);
        }
    // edge of the quintic simplex -> 2-face of its dual
    LatticePolytope d4 = simplexDelta(4);
    for (const Face& e : d4.faces(1)) CHECK(dualFace(d4, e).dim == 2);
}

TEST_CASE("smallest containing face") {
    LatticePolytope sq = square();
    const Face& whole = smallestContainingFace(sq, intVec({0, 0}));
    CHECK(whole.dim == 2);

    const Face& vert = smallestContainingFace(sq, intVec({1, 1}));
    CHECK(vert.dim == 0);

    const Face& edge = smallestContainingFace(sq, intVec({1, 0}));
    CHECK(edge.dim == 1);

    CHECK_THROWS_AS(smallestContainingFace(sq, intVec({2, 0})), PreconditionError);
}

TEST_CASE("canonical form: unimodular and permutation invariance") {
    std::mt19937_64 rng(31);
    for (const auto& p : {square(), crossPolygon(), cube3(), simplexDelta(3)}) {
        IntMat c0 = canonicalForm(p);
        for (int rep = 0; rep < 4; ++rep) {
            IntMat u = randomUnimodular(p.dim(), rng);
            CHECK(canonicalForm(applyUnimodular(p, u)) == c0);
        }
        // permuted vertex input order
        std::vector<IntVec> verts = p.vertices();
        std::shuffle(verts.begin(), verts.end(), rng);
        CHECK(canonicalForm(LatticePolytope::fromVertices(verts)) == c0);
    }
    CHECK(canonicalForm(square()) != canonicalForm(crossPolygon()));
}

TEST_CASE("face counts satisfy the Euler relation") {
    for (const auto& p : {cube3(), octahedron(), simplexDelta(3)}) {
        // nu_0 - nu_1 + nu_2 = 2 for 3-polytopes
        long nu0 = static_cast<long>(p.faces(0).size());
        long nu1 = static_cast<long>(p.faces(1).size());
        long nu2 = static_cast<long>(p.faces(2).size());
        CHECK(nu0 - nu1 + nu2 == 2);
    }
    LatticePolytope hex = poly({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    CHECK(hex.faces(0).size() == hex.faces(1).size());
}

TEST_CASE("face duality matches counts on reflexive polytopes") {
    for (const auto& p : {cube3(), octahedron(), simplexDualDelta(3)}) {
        LatticePolytope q = dual(p);
        for (Index d = 0; d < 3; ++d) CHECK(p.faces(d).size() == q.faces(2 - d).size());
    }
}

TEST_CASE("Pick's formula holds for every polygon in the corpus") {
    for (const auto& p : corpus(101, 30)) {
        if (p.dim() != 2) continue;
        PointCount pc = countPoints(p);
        CHECK(degree(p) == pc.l + pc.lStar - 2);
    }
}

TEST_CASE("degree is additive over the facet pyramids") {
    LatticePolytope sq = square();
    Int total = 0;
    for (const Face& f : sq.faces(1)) total += degree(sq, f);
    CHECK(degree(sq) == total); // 8 = 4 edges x 2
}
