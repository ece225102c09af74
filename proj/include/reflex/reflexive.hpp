#pragma once

#include "reflex/ehrhart.hpp"
#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reflex {

struct ReflexivePairInfo {
    bool isReflexive = false;
    std::string reason; ///< set when not reflexive
    std::vector<Int> facetOffsets;
    /// invariant factors of pi_1(pair) = N / N_{dual vertices} (reflexive only)
    std::vector<Int> pairGroup;
    /// invariant factors of pi_1(polytope) = M^Delta / M_Delta (reflexive only)
    std::vector<Int> polytopeGroup;
    /// index [M : M_Delta] of the vertex sublattice
    Int vertexLatticeIndex = 0;
};

/// Reflexivity test: origin strictly interior and every facet offset 1. A
/// positive result is cross-validated against delta-vector symmetry; any
/// disagreement raises InternalConsistencyError.
ReflexivePairInfo isReflexive(const LatticePolytope& p);

enum class GroupMode { Pair, Polytope };

/// Invariant factors (all of them, including leading 1s) of the chosen
/// fundamental group of a reflexive polytope.
std::vector<Int> fundamentalGroup(const LatticePolytope& p, GroupMode mode);

struct FaceContribution {
    Index codim = 0;
    std::vector<Index> vertexIndices;
    Int lStar = 0;
    Int dualLStar = 0;
    Int deg = 0;
    Int dualDeg = 0;
};

struct HodgeReport {
    Index n = 0;
    bool reflexive = false;
    Int h11 = 0;
    Int hN21 = 0;
    Int hN21Affine = 0;   ///< without the codimension-2 correction
    Int picardAmbient = 0; ///< l(dual) - n - 1
    std::optional<Int> euler; ///< only for n = 4
    std::vector<FaceContribution> faceTable;
};

/// h^{n-2,1} of a maximal crepant desingularization:
///   l(p) - n - 1 - sum_{codim 1} l*(F) + sum_{codim 2} l*(F) l*(F*).
Int hodgeHN21(const LatticePolytope& p);

/// h^{1,1}, the same formula evaluated on the dual polytope.
Int hodgeH11(const LatticePolytope& p);

/// Full report with the per-face contribution table; n >= 4. For n = 4 the
/// Euler characteristic is included.
HodgeReport hodgeReport(const LatticePolytope& p);

/// Euler characteristic of the Calabi-Yau 3-fold (n = 4 only):
///   sum_{dim F = 1} d(F) d(F*) - sum_{dim F = 2} d(F) d(F*).
Int eulerCY3(const LatticePolytope& p);

/// The K3 edge sum sum_{dim F = 1} d(F) d(F*); equals 24 for every reflexive
/// 3-polytope.
Int check24(const LatticePolytope& p);

struct K3Ranks {
    Int rankF = 0; ///< nu_0(dual) + 21 - sum_{edges of p} d(F)
    Int rankG = 0; ///< same with the roles of p and dual(p) swapped
    Int sum = 0;
    bool boundHolds = false;        ///< rankF + rankG <= 20
    bool equalityCondition = false; ///< every edge has d(F) = 1 or d(F*) = 1
};

/// Ranks of the toric-boundary curve lattices of the mirror K3 pair (n = 3).
K3Ranks k3EdgeRank(const LatticePolytope& p);

struct PyramidCheck {
    Int degreeTotal = 0;    ///< d(p)
    Int facetSum = 0;       ///< sum over facets of offset * d(facet)
    bool ok = false;
    std::vector<Int> facetDegrees;
};

/// The pyramid decomposition identity d(p) = sum_facets offset * d(facet)
/// (offsets are all 1 in the reflexive case). Requires an interior origin.
PyramidCheck eulerOpenPartZero(const LatticePolytope& p);

} // namespace reflex
