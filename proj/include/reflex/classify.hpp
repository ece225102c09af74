#pragma once

#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <vector>

namespace reflex {

struct PolygonClass {
    LatticePolytope poly;
    IntMat canonical;
    Int l = 0;
    Int lStar = 0;
    Int deg = 0;           ///< = number of boundary lattice points
    Index dualIndex = -1;  ///< catalog index of the dual class
};

/// All lattice-equivalence classes of reflexive polygons found inside the
/// box [-searchBox, searchBox]^2, paired with their duals. The default box
/// is sufficient: there are exactly 16 classes.
std::vector<PolygonClass> classifyPolygons(long searchBox = 4);

struct Check12Row {
    Index index = 0;
    Int boundary = 0;
    Int dualBoundary = 0;
    bool ok = false;
};

/// Boundary-point duality k + k* = 12 across the catalog.
std::vector<Check12Row> check12(const std::vector<PolygonClass>& catalog);

/// Unit-fraction solution sum 1/d_i = 1 with d_0 <= ... <= d_n, and the
/// derived weights w_i = lcm(d)/d_i of the associated reflexive simplex.
struct WeightSystem {
    Index n = 0;
    std::vector<Int> dValues;
    Int d = 0; ///< lcm of the d_i
    std::vector<Int> weights;
    Int groupOrder = 0; ///< (prod d_i) / d^2
};

/// All solutions in ascending order, 1 <= n <= 5. Counts: 1, 3, 14, 147, 3462.
std::vector<WeightSystem> enumerateWeightSystems(Index n);

/// The reflexive simplex Delta(w) = { x : sum w_i x_i = 0, x_i >= -1 }
/// realized in Z^n through an HNF basis of the weight-orthogonal lattice.
LatticePolytope simplexFromWeights(const WeightSystem& w);

struct SimplexMatrixReport {
    IntMat b; ///< pairing matrix <p_i, l_j> with l_j the facet opposite p_j
    bool symmetric = false;
    Index rank = 0;
    bool offDiagonalMinusOne = false;
    bool unitFractionIdentity = false; ///< sum 1/(b_ii + 1) = 1
    std::vector<Int> weights;          ///< primitive kernel vector of b
};

/// Structural checks of the simplex pairing matrix; input must be a
/// reflexive simplex (n+1 vertices).
SimplexMatrixReport simplexMatrixCheck(const LatticePolytope& p);

struct IntermediateLatticesReport {
    std::vector<Int> groupInvariants; ///< invariants of M(w)/M_B(w)
    Index subgroupCount = 0;
    Index orbitCount = 0;
    std::vector<LatticePolytope> representatives; ///< one simplex per orbit
};

/// Reflexive simplices with the given weights, one per orbit of the subgroup
/// lattice of M(w)/M_B(w) under the weight-permutation symmetry. n <= 3.
IntermediateLatticesReport intermediateLattices(const WeightSystem& w);

} // namespace reflex
