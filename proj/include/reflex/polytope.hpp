#pragma once

#include "reflex/lattice_points.hpp"
#include "reflex/types.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace reflex {

struct Facet {
    IntVec normal; ///< primitive inner normal
    Int offset;    ///< facet inequality <x, normal> >= -offset
};

class LatticePolytope;

/// A face of a polytope: vertex set, tight facets, and an affine lattice
/// chart (origin vertex plus an HNF basis of the direction lattice M(Theta),
/// the saturation of the span of vertex differences).
struct Face {
    std::vector<Index> vertexIndices; ///< sorted indices into owner vertices
    std::vector<Index> tightFacets;   ///< sorted indices of facets containing the face
    Index dim = 0;
    IntVec origin;  ///< one vertex of the face
    IntMat basis;   ///< dim x n, rows form a basis of M(Theta)
};

struct PointCount {
    Int l;     ///< lattice points of the (scaled) body
    Int lStar; ///< lattice points in the relative interior
};

/// Full-dimensional integral polytope carrying both representations: the
/// vertex list and the facet system. Immutable after construction; face
/// enumeration and the dual are cached once and safe to read concurrently.
class LatticePolytope {
public:
    /// Exact convex hull of the given points (duplicates dropped). Throws
    /// PreconditionError carrying the affine span's dimension if the points
    /// are not full-dimensional.
    static LatticePolytope fromVertices(const std::vector<IntVec>& points);

    Index dim() const;
    const std::vector<IntVec>& vertices() const;
    const std::vector<Facet>& facets() const;

    bool contains(const IntVec& x, bool strictly = false) const;
    bool originInterior() const;

    /// All d-dimensional faces; d = dim() returns the polytope itself as the
    /// unique face. Results are cached.
    const std::vector<Face>& faces(Index d) const;

    /// The polytope as a face of itself.
    const Face& wholeFace() const;

    /// Bounding box of k * polytope.
    Box boundingBox(const Int& k = Int(1)) const;

    /// Inequalities of k * polytope (offsets scaled, never vertices).
    std::vector<HalfSpace> scaledHalfSpaces(const Int& k = Int(1)) const;

    /// Lattice points of k * polytope in lexicographic order.
    std::vector<IntVec> latticePoints(const Int& k = Int(1), bool strictInterior = false) const;

    bool operator==(const LatticePolytope& o) const;

    struct Data;
    explicit LatticePolytope(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    const std::shared_ptr<const Data>& data() const { return data_; }

private:
    std::shared_ptr<const Data> data_;
};

/// l and l* of a face (or of the whole polytope), counted in the face's own
/// affine lattice. A vertex counts l = l* = 1.
PointCount countPoints(const LatticePolytope& p, const Face& f);
PointCount countPoints(const LatticePolytope& p);

/// Lattice-normalized degree d(Theta) = dim! * vol relative to M(Theta).
/// Dimension 1 uses l - 1, dimension 2 uses Pick's formula, higher dimensions
/// the Ehrhart leading coefficient. Not defined for vertices.
Int degree(const LatticePolytope& p, const Face& f);
Int degree(const LatticePolytope& p);

/// The face realized as a full-dimensional polytope in Z^dim via its chart.
LatticePolytope faceAsPolytope(const LatticePolytope& p, const Face& f);

/// Polar dual. Requires the origin strictly interior and every facet offset
/// equal to 1 (the reflexive case); otherwise the dual is not a lattice
/// polytope and a PreconditionError names the offending facet.
LatticePolytope dual(const LatticePolytope& p);

/// Face duality Theta -> Theta* between a reflexive polytope and its dual:
/// dim Theta + dim Theta* = n - 1, incidence-reversing, and an involution.
const Face& dualFace(const LatticePolytope& p, const Face& f);

/// The unique face whose relative interior contains m; throws if m lies
/// outside the polytope. Codimension 0 means the interior of p.
const Face& smallestContainingFace(const LatticePolytope& p, const IntVec& m);

/// Vertex matrix canonical under lattice automorphisms GL(n,Z) combined with
/// vertex reordering: two polytopes are lattice-equivalent iff their
/// canonical forms are equal. Rows are coordinates, columns are vertices.
IntMat canonicalForm(const LatticePolytope& p);

} // namespace reflex
