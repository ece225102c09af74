#pragma once

#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <random>
#include <vector>

namespace reflex::testing {

inline IntVec vec(std::initializer_list<long> xs) { return intVec(xs); }

inline LatticePolytope poly(std::initializer_list<std::initializer_list<long>> pts) {
    std::vector<IntVec> v;
    for (auto p : pts) v.push_back(intVec(p));
    return LatticePolytope::fromVertices(v);
}

// --- named polytopes -------------------------------------------------------

inline LatticePolytope square() { return poly({{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}); }
inline LatticePolytope crossPolygon() { return poly({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
inline LatticePolytope cube3() {
    std::vector<IntVec> v;
    for (long x : {-1, 1})
        for (long y : {-1, 1})
            for (long z : {-1, 1}) v.push_back(intVec({x, y, z}));
    return LatticePolytope::fromVertices(v);
}
inline LatticePolytope octahedron() {
    return poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}
inline LatticePolytope crossPolytope4() {
    std::vector<IntVec> v;
    for (long i = 0; i < 4; ++i)
        for (long s : {-1, 1}) {
            IntVec e = IntVec::Zero(4);
            e[i] = s;
            v.push_back(e);
        }
    return LatticePolytope::fromVertices(v);
}
inline LatticePolytope cube4() {
    std::vector<IntVec> v;
    for (long m = 0; m < 16; ++m) {
        IntVec e(4);
        for (long i = 0; i < 4; ++i) e[i] = (m >> i) & 1 ? 1 : -1;
        v.push_back(e);
    }
    return LatticePolytope::fromVertices(v);
}

/// the simplex conv{e_1..e_n, -(e_1+..+e_n)}; dual of the degree-(n+1) family
inline LatticePolytope simplexDualDelta(Index n) {
    std::vector<IntVec> v;
    for (Index i = 0; i < n; ++i) {
        IntVec e = IntVec::Zero(n);
        e[i] = 1;
        v.push_back(e);
    }
    v.push_back(IntVec::Constant(n, Int(-1)));
    return LatticePolytope::fromVertices(v);
}

/// the Newton polytope of degree-(n+1) hypersurfaces in P^n:
/// x_i >= -1, sum x_i <= 1; vertices -1 and (n+1)e_i - 1
inline LatticePolytope simplexDelta(Index n) {
    std::vector<IntVec> v;
    v.push_back(IntVec::Constant(n, Int(-1)));
    for (Index i = 0; i < n; ++i) {
        IntVec e = IntVec::Constant(n, Int(-1));
        e[i] = n;
        v.push_back(e);
    }
    return LatticePolytope::fromVertices(v);
}

/// the P^2 x P^2 example: conv{A_1..A_6}
inline LatticePolytope p2p2Polytope() {
    return poly({{1, 0, 0, 0},
                 {0, 1, 0, 0},
                 {-1, -1, 0, 0},
                 {0, 0, 1, 0},
                 {0, 0, 0, 1},
                 {0, 0, -1, -1}});
}

// --- randomized corpora ----------------------------------------------------

inline IntMat randomUnimodular(Index n, std::mt19937_64& rng) {
    IntMat u = IntMat::Zero(n, n);
    for (Index i = 0; i < n; ++i) u(i, i) = 1;
    for (int step = 0; step < 3 * n; ++step) {
        Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
        Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
        if (i == j) continue;
        long c = static_cast<long>(rng() % 3) - 1;
        if (c == 0) c = 1;
        u.row(i) += Int(c) * u.row(j);
    }
    // a couple of swaps and sign flips
    for (int step = 0; step < 2; ++step) {
        Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
        Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
        if (i != j) u.row(i).swap(u.row(j));
        u.row(i) = -u.row(i);
    }
    return u;
}

inline LatticePolytope applyUnimodular(const LatticePolytope& p, const IntMat& u) {
    std::vector<IntVec> v;
    v.reserve(p.vertices().size());
    for (const auto& x : p.vertices()) v.push_back(u * x);
    return LatticePolytope::fromVertices(v);
}

/// random full-dimensional polytope with the origin strictly interior:
/// a random hull over {±e_i} plus a few random points in [-2, 2]^n
inline LatticePolytope randomOriginPolytope(Index n, std::mt19937_64& rng) {
    std::vector<IntVec> pts;
    for (Index i = 0; i < n; ++i) {
        IntVec e = IntVec::Zero(n);
        e[i] = 1;
        pts.push_back(e);
        pts.push_back(-e);
    }
    const int extra = 2 + static_cast<int>(rng() % 4);
    for (int k = 0; k < extra; ++k) {
        IntVec x(n);
        for (Index i = 0; i < n; ++i) x[i] = static_cast<long>(rng() % 5) - 2;
        pts.push_back(x);
    }
    return LatticePolytope::fromVertices(pts);
}

/// >= `count` polytopes of dimensions 2..4 with interior origin, a seeded mix
/// of reflexive classics and random hulls
inline std::vector<LatticePolytope> corpus(std::uint64_t seed, int count = 50) {
    std::mt19937_64 rng(seed);
    std::vector<LatticePolytope> out;
    out.push_back(square());
    out.push_back(crossPolygon());
    out.push_back(poly({{1, 0}, {0, 1}, {-1, -1}}));
    out.push_back(poly({{-1, -1}, {2, -1}, {-1, 2}}));
    out.push_back(poly({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}));
    out.push_back(poly({{2, 0}, {0, 2}, {-2, -2}}));
    out.push_back(simplexDelta(2));
    out.push_back(cube3());
    out.push_back(octahedron());
    out.push_back(simplexDualDelta(3));
    out.push_back(simplexDelta(3));
    out.push_back(simplexDelta(4));
    out.push_back(simplexDualDelta(4));
    out.push_back(cube4());
    out.push_back(crossPolytope4());
    out.push_back(p2p2Polytope());
    while (static_cast<int>(out.size()) < count) {
        Index n = 2 + static_cast<Index>(rng() % 3);
        if (out.size() % 5 == 4) n = std::min<Index>(n, 3);
        out.push_back(randomOriginPolytope(n, rng));
    }
    return out;
}

} // namespace reflex::testing
