#include "reflex/polytope.hpp"

#include "reflex/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace reflex {

struct LatticePolytope::Data {
    Index n = 0;
    std::vector<IntVec> vertices; // lex sorted
    std::vector<Facet> facets;    // lex sorted by (normal, offset)

    mutable std::mutex lock;
    mutable std::vector<std::vector<Face>> faceLattice; // by dim, built once
    mutable bool facesBuilt = false;
    mutable std::optional<Face> whole;
    mutable std::shared_ptr<const Data> dualCache;
};

namespace {

using Data = LatticePolytope::Data;

Index integerRank(const IntMat& m) {
    IntMat h = hnfOf(m);
    Index r = 0;
    for (Index i = 0; i < h.rows(); ++i)
        if (!h.row(i).isZero()) ++r;
    return r;
}

IntMat differenceMatrix(const std::vector<IntVec>& pts) {
    if (pts.empty()) return IntMat(0, 0);
    IntMat d(static_cast<Index>(pts.size()) - 1, pts[0].size());
    for (Index i = 1; i < static_cast<Index>(pts.size()); ++i)
        d.row(i - 1) = pts[static_cast<size_t>(i)] - pts[0];
    return d;
}

/// HNF basis of the saturated direction lattice M(Theta) of a vertex set.
IntMat directionLattice(const std::vector<IntVec>& pts, Index n) {
    IntMat d = differenceMatrix(pts);
    if (d.rows() == 0) return IntMat(0, n);
    IntMat k = kernelRows(d);
    return kernelRows(k);
}

Face makeFace(const Data& data, std::vector<Index> vertexIdx) {
    Face f;
    f.vertexIndices = std::move(vertexIdx);
    std::vector<IntVec> pts;
    pts.reserve(f.vertexIndices.size());
    for (Index i : f.vertexIndices) pts.push_back(data.vertices[static_cast<size_t>(i)]);
    f.origin = pts[0];
    f.basis = directionLattice(pts, data.n);
    f.dim = f.basis.rows();
    for (Index j = 0; j < static_cast<Index>(data.facets.size()); ++j) {
        const Facet& fc = data.facets[static_cast<size_t>(j)];
        bool tight = true;
        for (const auto& v : pts)
            if (fc.normal.dot(v) != -fc.offset) { tight = false; break; }
        if (tight) f.tightFacets.push_back(j);
    }
    return f;
}

void buildFaceLattice(const Data& data) {
    if (data.facesBuilt) return;
    const Index n = data.n;
    const Index nv = static_cast<Index>(data.vertices.size());

    std::vector<std::vector<Face>> lattice(static_cast<size_t>(n) + 1);

    Face whole;
    whole.dim = n;
    whole.origin = data.vertices[0];
    whole.basis = IntMat::Zero(n, n);
    for (Index i = 0; i < n; ++i) whole.basis(i, i) = 1;
    for (Index i = 0; i < nv; ++i) whole.vertexIndices.push_back(i);
    lattice[static_cast<size_t>(n)].push_back(whole);

    std::vector<std::vector<Index>> facetVerts(data.facets.size());
    for (size_t j = 0; j < data.facets.size(); ++j) {
        for (Index i = 0; i < nv; ++i)
            if (data.facets[j].normal.dot(data.vertices[static_cast<size_t>(i)]) ==
                -data.facets[j].offset)
                facetVerts[j].push_back(i);
    }

    for (Index d = n - 1; d >= 0; --d) {
        std::set<std::vector<Index>> seen;
        std::vector<Face>& out = lattice[static_cast<size_t>(d)];
        for (const Face& parent : lattice[static_cast<size_t>(d) + 1]) {
            for (size_t j = 0; j < data.facets.size(); ++j) {
                if (std::binary_search(parent.tightFacets.begin(), parent.tightFacets.end(),
                                       static_cast<Index>(j)))
                    continue;
                std::vector<Index> w;
                std::set_intersection(parent.vertexIndices.begin(), parent.vertexIndices.end(),
                                      facetVerts[j].begin(), facetVerts[j].end(),
                                      std::back_inserter(w));
                if (w.empty() || !seen.insert(w).second) continue;
                Face f = makeFace(data, std::move(w));
                if (f.dim == d) out.push_back(std::move(f));
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const Face& a, const Face& b) { return a.vertexIndices < b.vertexIndices; });
    }
    data.faceLattice = std::move(lattice);
    data.facesBuilt = true;
}

std::shared_ptr<const Data> makeData(Index n, std::vector<IntVec> verts, std::vector<Facet> facets) {
    auto d = std::make_shared<Data>();
    d->n = n;
    std::sort(verts.begin(), verts.end(), LexLess{});
    d->vertices = std::move(verts);
    std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
        if (a.normal != b.normal) return lexLess(a.normal, b.normal);
        return a.offset < b.offset;
    });
    d->facets = std::move(facets);
    return d;
}

} // namespace

LatticePolytope LatticePolytope::fromVertices(const std::vector<IntVec>& points) {
    if (points.empty()) throw PreconditionError("from_vertices: empty point set");
    const Index n = points[0].size();
    for (const auto& p : points)
        if (p.size() != n) throw PreconditionError("from_vertices: mixed dimensions");

    std::vector<IntVec> pts = points;
    std::sort(pts.begin(), pts.end(), LexLess{});
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const IntVec& a, const IntVec& b) { return a == b; }),
              pts.end());

    Index affDim = integerRank(differenceMatrix(pts));
    if (affDim < n)
        throw PreconditionError("from_vertices: points span an affine subspace of dimension " +
                                std::to_string(affDim) + " < " + std::to_string(n));

    // facets are the extreme rays of the polar cone of cone{(1, p)}
    IntMat homog(static_cast<Index>(pts.size()), n + 1);
    for (Index i = 0; i < homog.rows(); ++i) {
        homog(i, 0) = 1;
        homog.row(i).tail(n) = pts[static_cast<size_t>(i)];
    }
    std::vector<IntVec> rays = coneExtremeRays(homog);

    std::vector<Facet> facets;
    facets.reserve(rays.size());
    for (const auto& r : rays) {
        Facet f;
        f.offset = r[0];
        f.normal = r.tail(n);
        facets.push_back(std::move(f));
    }

    // a hull point is a vertex iff its tight facet normals span rank n
    std::vector<IntVec> verts;
    for (const auto& p : pts) {
        std::vector<IntVec> tight;
        for (const auto& f : facets)
            if (f.normal.dot(p) == -f.offset) tight.push_back(f.normal);
        if (tight.empty()) continue;
        IntMat t(static_cast<Index>(tight.size()), n);
        for (Index i = 0; i < t.rows(); ++i) t.row(i) = tight[static_cast<size_t>(i)];
        if (integerRank(t) == n) verts.push_back(p);
    }

    return LatticePolytope(makeData(n, std::move(verts), std::move(facets)));
}

Index LatticePolytope::dim() const { return data_->n; }
const std::vector<IntVec>& LatticePolytope::vertices() const { return data_->vertices; }
const std::vector<Facet>& LatticePolytope::facets() const { return data_->facets; }

bool LatticePolytope::contains(const IntVec& x, bool strictly) const {
    for (const auto& f : data_->facets) {
        Int v = f.normal.dot(x);
        if (strictly ? v <= -f.offset : v < -f.offset) return false;
    }
    return true;
}

bool LatticePolytope::originInterior() const {
    for (const auto& f : data_->facets)
        if (f.offset <= 0) return false;
    return true;
}

const std::vector<Face>& LatticePolytope::faces(Index d) const {
    if (d < 0 || d > data_->n) throw PreconditionError("faces: dimension out of range");
    std::lock_guard<std::mutex> g(data_->lock);
    buildFaceLattice(*data_);
    return data_->faceLattice[static_cast<size_t>(d)];
}

const Face& LatticePolytope::wholeFace() const { return faces(data_->n)[0]; }

Box LatticePolytope::boundingBox(const Int& k) const {
    const Index n = data_->n;
    Box b{IntVec(n), IntVec(n)};
    for (Index i = 0; i < n; ++i) {
        Int lo = data_->vertices[0][i], hi = lo;
        for (const auto& v : data_->vertices) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        b.lo[i] = k * lo;
        b.hi[i] = k * hi;
    }
    return b;
}

std::vector<HalfSpace> LatticePolytope::scaledHalfSpaces(const Int& k) const {
    std::vector<HalfSpace> hs;
    hs.reserve(data_->facets.size());
    for (const auto& f : data_->facets) hs.push_back(HalfSpace{f.normal, k * f.offset});
    return hs;
}

std::vector<IntVec> LatticePolytope::latticePoints(const Int& k, bool strictInterior) const {
    return latticePointsIn(scaledHalfSpaces(k), boundingBox(k), strictInterior);
}

bool LatticePolytope::operator==(const LatticePolytope& o) const {
    if (data_ == o.data_) return true;
    if (data_->n != o.data_->n) return false;
    if (data_->vertices.size() != o.data_->vertices.size()) return false;
    for (size_t i = 0; i < data_->vertices.size(); ++i)
        if (data_->vertices[i] != o.data_->vertices[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------

PointCount countPoints(const LatticePolytope& p) {
    auto all = p.latticePoints();
    auto inner = p.latticePoints(1, true);
    return PointCount{Int(all.size()), Int(inner.size())};
}

PointCount countPoints(const LatticePolytope& p, const Face& f) {
    if (f.dim == 0) return PointCount{1, 1};
    if (f.dim == p.dim()) return countPoints(p);
    return countPoints(faceAsPolytope(p, f));
}

LatticePolytope faceAsPolytope(const LatticePolytope& p, const Face& f) {
    if (f.dim == 0) throw PreconditionError("faceAsPolytope: zero-dimensional face");
    if (f.dim == p.dim()) return p;
    RatMat bt(f.basis.cols(), f.basis.rows());
    for (Index i = 0; i < bt.rows(); ++i)
        for (Index j = 0; j < bt.cols(); ++j) bt(i, j) = Rat(f.basis(j, i));
    std::vector<IntVec> coords;
    coords.reserve(f.vertexIndices.size());
    for (Index vi : f.vertexIndices) {
        const IntVec& v = p.vertices()[static_cast<size_t>(vi)];
        RatMat rhs(bt.rows(), 1);
        for (Index i = 0; i < bt.rows(); ++i) rhs(i, 0) = Rat(v[i] - f.origin[i]);
        auto sol = solveRational(bt, rhs);
        if (!sol) throw InternalConsistencyError("face chart does not contain its vertex");
        IntVec c(f.dim);
        for (Index i = 0; i < f.dim; ++i) {
            if (!isInteger((*sol)(i, 0)))
                throw InternalConsistencyError("face vertex has non-integral chart coordinates");
            c[i] = numerator((*sol)(i, 0));
        }
        coords.push_back(std::move(c));
    }
    return LatticePolytope::fromVertices(coords);
}

Int degree(const LatticePolytope& p) {
    const Index d = p.dim();
    PointCount c = countPoints(p);
    if (d == 1) return c.l - 1;
    if (d == 2) return c.l + c.lStar - 2;
    // d-th finite difference of k -> l(k*p) equals d! * vol
    Int acc = 0;
    Int binom = 1;
    for (Index j = 0; j <= d; ++j) {
        Int lj = j == 0 ? Int(1) : Int(p.latticePoints(Int(j)).size());
        Int sign = ((d - j) % 2 == 0) ? 1 : -1;
        acc += sign * binom * lj;
        binom = binom * (d - j) / (j + 1);
    }
    return acc;
}

Int degree(const LatticePolytope& p, const Face& f) {
    if (f.dim == 0)
        throw PreconditionError("degree: not defined for zero-dimensional faces");
    if (f.dim == p.dim()) return degree(p);
    return degree(faceAsPolytope(p, f));
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const Data> dualData(const Data& d) {
    {
        std::lock_guard<std::mutex> g(d.lock);
        if (d.dualCache) return d.dualCache;
    }
    bool interior = true;
    for (const auto& f : d.facets)
        if (f.offset <= 0) interior = false;
    if (!interior)
        throw PreconditionError("dual: origin is not strictly interior");
    for (const auto& f : d.facets) {
        if (f.offset != 1) {
            std::string nrm;
            for (Index i = 0; i < f.normal.size(); ++i)
                nrm += (i ? "," : "") + f.normal[i].str();
            throw PreconditionError("dual is not a lattice polytope: facet offset " +
                                    f.offset.str() + " != 1 at normal (" + nrm + ")");
        }
    }
    std::vector<IntVec> verts;
    verts.reserve(d.facets.size());
    for (const auto& f : d.facets) verts.push_back(f.normal);
    std::vector<Facet> facets;
    facets.reserve(d.vertices.size());
    for (const auto& v : d.vertices) facets.push_back(Facet{v, 1});
    auto q = makeData(d.n, std::move(verts), std::move(facets));
    std::lock_guard<std::mutex> g(d.lock);
    if (!d.dualCache) d.dualCache = q;
    return d.dualCache;
}

} // namespace

LatticePolytope dual(const LatticePolytope& p) { return LatticePolytope(dualData(*p.data())); }

const Face& dualFace(const LatticePolytope& p, const Face& f) {
    if (f.dim == p.dim())
        throw PreconditionError("dual_face: the whole polytope has no dual face");
    LatticePolytope q = dual(p);

    // q's vertices are p's facet normals, re-sorted; map facet index -> q vertex index
    std::vector<Index> qIdx;
    qIdx.reserve(f.tightFacets.size());
    for (Index fi : f.tightFacets) {
        const IntVec& nrm = p.facets()[static_cast<size_t>(fi)].normal;
        auto it = std::lower_bound(q.vertices().begin(), q.vertices().end(), nrm, LexLess{});
        qIdx.push_back(static_cast<Index>(it - q.vertices().begin()));
    }
    std::sort(qIdx.begin(), qIdx.end());

    const Index dStar = p.dim() - 1 - f.dim;
    for (const Face& g : q.faces(dStar))
        if (g.vertexIndices == qIdx) return g;
    throw InternalConsistencyError("dual_face: incidence-reversed face not found");
}

const Face& smallestContainingFace(const LatticePolytope& p, const IntVec& m) {
    if (!p.contains(m))
        throw PreconditionError("smallest_containing_face: point lies outside the polytope");
    std::vector<Index> tight;
    for (Index j = 0; j < static_cast<Index>(p.facets().size()); ++j) {
        const auto& f = p.facets()[static_cast<size_t>(j)];
        if (f.normal.dot(m) == -f.offset) tight.push_back(j);
    }
    if (tight.empty()) return p.wholeFace();

    std::vector<Index> verts;
    for (Index i = 0; i < static_cast<Index>(p.vertices().size()); ++i) {
        bool onAll = true;
        for (Index j : tight) {
            const auto& f = p.facets()[static_cast<size_t>(j)];
            if (f.normal.dot(p.vertices()[static_cast<size_t>(i)]) != -f.offset) {
                onAll = false;
                break;
            }
        }
        if (onAll) verts.push_back(i);
    }
    for (Index d = 0; d < p.dim(); ++d)
        for (const Face& g : p.faces(d))
            if (g.vertexIndices == verts) return g;
    throw InternalConsistencyError("smallest_containing_face: face lookup failed");
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

// ordered partition of column indices; refined as rows are chosen
using Partition = std::vector<std::vector<Index>>;

struct CanonState {
    std::vector<bool> usedRows;
    Partition part;
    bool operator<(const CanonState& o) const {
        if (usedRows != o.usedRows) return usedRows < o.usedRows;
        return part < o.part;
    }
};

// row values under the partition, each group sorted descending
std::vector<Int> rowKey(const std::vector<std::vector<Int>>& pm, Index r, const Partition& part) {
    std::vector<Int> key;
    key.reserve(pm[0].size());
    for (const auto& grp : part) {
        std::vector<Int> vals;
        vals.reserve(grp.size());
        for (Index c : grp) vals.push_back(pm[static_cast<size_t>(r)][static_cast<size_t>(c)]);
        std::sort(vals.rbegin(), vals.rend());
        for (auto& v : vals) key.push_back(std::move(v));
    }
    return key;
}

Partition refine(const std::vector<std::vector<Int>>& pm, Index r, const Partition& part) {
    Partition next;
    for (const auto& grp : part) {
        std::map<Int, std::vector<Index>, std::greater<Int>> split;
        for (Index c : grp) split[pm[static_cast<size_t>(r)][static_cast<size_t>(c)]].push_back(c);
        for (auto& [v, g] : split) next.push_back(std::move(g));
    }
    return next;
}

void columnOrders(const Partition& part, size_t gi, std::vector<Index>& cur,
                  std::vector<std::vector<Index>>& out, size_t cap) {
    if (out.size() >= cap) return;
    if (gi == part.size()) {
        out.push_back(cur);
        return;
    }
    std::vector<Index> grp = part[gi];
    std::sort(grp.begin(), grp.end());
    do {
        for (Index c : grp) cur.push_back(c);
        columnOrders(part, gi + 1, cur, out, cap);
        cur.resize(cur.size() - grp.size());
        if (out.size() >= cap) return;
    } while (std::next_permutation(grp.begin(), grp.end()));
}

std::vector<Int> flatten(const IntMat& m) {
    std::vector<Int> v;
    v.reserve(static_cast<size_t>(m.rows() * m.cols()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

} // namespace

IntMat canonicalForm(const LatticePolytope& p) {
    const Index nf = static_cast<Index>(p.facets().size());
    const Index nv = static_cast<Index>(p.vertices().size());
    std::vector<std::vector<Int>> pm(static_cast<size_t>(nf), std::vector<Int>(static_cast<size_t>(nv)));
    for (Index i = 0; i < nf; ++i)
        for (Index j = 0; j < nv; ++j)
            pm[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                p.facets()[static_cast<size_t>(i)].normal.dot(p.vertices()[static_cast<size_t>(j)]) +
                p.facets()[static_cast<size_t>(i)].offset;

    // canonicalize the pairing matrix over row and column permutations:
    // level by level, keep exactly the states achieving the maximal row key
    std::set<CanonState> states;
    {
        Partition all(1);
        for (Index c = 0; c < nv; ++c) all[0].push_back(c);
        states.insert(CanonState{std::vector<bool>(static_cast<size_t>(nf), false), all});
    }
    for (Index level = 0; level < nf; ++level) {
        std::vector<Int> best;
        std::set<CanonState> next;
        for (const auto& st : states) {
            for (Index r = 0; r < nf; ++r) {
                if (st.usedRows[static_cast<size_t>(r)]) continue;
                std::vector<Int> key = rowKey(pm, r, st.part);
                if (key > best) {
                    best = key;
                    next.clear();
                }
                if (key == best) {
                    CanonState ns{st.usedRows, refine(pm, r, st.part)};
                    ns.usedRows[static_cast<size_t>(r)] = true;
                    next.insert(std::move(ns));
                }
            }
        }
        states = std::move(next);
    }

    // all vertex orders consistent with a canonical pairing matrix
    std::optional<std::vector<Int>> bestFlat;
    IntMat bestMat;
    for (const auto& st : states) {
        std::vector<std::vector<Index>> orders;
        std::vector<Index> cur;
        columnOrders(st.part, 0, cur, orders, 40320);
        for (const auto& ord : orders) {
            IntMat v(p.dim(), nv);
            for (Index j = 0; j < nv; ++j)
                for (Index i = 0; i < p.dim(); ++i)
                    v(i, j) = p.vertices()[static_cast<size_t>(ord[static_cast<size_t>(j)])][i];
            IntMat h = hnfOf(v);
            std::vector<Int> flat = flatten(h);
            if (!bestFlat || flat < *bestFlat) {
                bestFlat = std::move(flat);
                bestMat = std::move(h);
            }
        }
    }
    return bestMat;
}

} // namespace reflex
