#pragma once

#include "reflex/types.hpp"

#include <vector>

namespace reflex {

/// Closed half-space { x : <x, normal> >= -offset }.
struct HalfSpace {
    IntVec normal;
    Int offset;
};

struct Box {
    IntVec lo;
    IntVec hi;
};

/// All integer points of the region cut out by the half-spaces, intersected
/// with the box, in lexicographic order. `strict` counts only points
/// satisfying every inequality strictly (relative interior for full-dim
/// regions).
std::vector<IntVec> latticePointsIn(const std::vector<HalfSpace>& halfSpaces, const Box& box,
                                    bool strict = false);

/// Same enumeration, but verifies first that the half-space system itself is
/// bounded (trivial recession cone); throws PreconditionError otherwise.
std::vector<IntVec> latticePointsInChecked(const std::vector<HalfSpace>& halfSpaces,
                                           const Box& box);

Int countLatticePoints(const std::vector<HalfSpace>& halfSpaces, const Box& box,
                       bool strict = false);

/// Extreme rays of the cone { x : a x >= 0 } as primitive integer vectors,
/// one per ray, via exact double description. For a pointed cone the list is
/// canonical up to order; the zero cone yields an empty list.
std::vector<IntVec> coneExtremeRays(const IntMat& a);

/// Rays spanning { x : a x >= 0 } including its lineality space; empty iff
/// the cone is {0}. Used for boundedness checks.
bool coneIsTrivial(const IntMat& a);

} // namespace reflex
