#include "reflex/classify.hpp"

#include "reflex/ehrhart.hpp"
#include "reflex/linalg.hpp"
#include "reflex/reflexive.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace reflex {

namespace {

std::vector<Int> flat(const IntMat& m) {
    std::vector<Int> v;
    v.reserve(static_cast<size_t>(m.rows() * m.cols() + 2));
    v.push_back(m.rows());
    v.push_back(m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

long cross(long ax, long ay, long bx, long by) { return ax * by - ay * bx; }

// closed-triangle membership of the origin, int64 arithmetic (tiny coords)
bool originInTriangle(long ax, long ay, long bx, long by, long cx, long cy) {
    long d1 = cross(bx - ax, by - ay, -ax, -ay);
    long d2 = cross(cx - bx, cy - by, -bx, -by);
    long d3 = cross(ax - cx, ay - cy, -cx, -cy);
    bool hasNeg = d1 < 0 || d2 < 0 || d3 < 0;
    bool hasPos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(hasNeg && hasPos);
}

long gcdL(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

} // namespace

std::vector<PolygonClass> classifyPolygons(long searchBox) {
    const long B = searchBox;
    std::vector<std::pair<long, long>> pts;
    for (long x = -B; x <= B; ++x)
        for (long y = -B; y <= B; ++y)
            if (x != 0 || y != 0) pts.emplace_back(x, y);

    auto toPoly = [](const std::vector<std::pair<long, long>>& vs) {
        std::vector<IntVec> v;
        v.reserve(vs.size());
        for (auto [x, y] : vs) v.push_back(intVec({x, y}));
        return LatticePolytope::fromVertices(v);
    };

    // seed triangles: contain the origin, interior lattice points inside {0}
    std::set<std::vector<Int>> seen;
    std::vector<LatticePolytope> queue;
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b)
            for (size_t c = b + 1; c < pts.size(); ++c) {
                auto [ax, ay] = pts[a];
                auto [bx, by] = pts[b];
                auto [cx, cy] = pts[c];
                long area2 = cross(bx - ax, by - ay, cx - ax, cy - ay);
                if (area2 == 0) continue;
                if (!originInTriangle(ax, ay, bx, by, cx, cy)) continue;
                long boundary = gcdL(bx - ax, by - ay) + gcdL(cx - bx, cy - by) +
                                gcdL(ax - cx, ay - cy);
                // Pick: 2 * interior = |area2| - boundary + 2
                long interior2 = std::abs(area2) - boundary + 2;
                if (interior2 > 2) continue;
                bool originOnBoundary = cross(bx - ax, by - ay, -ax, -ay) == 0 ||
                                        cross(cx - bx, cy - by, -bx, -by) == 0 ||
                                        cross(ax - cx, ay - cy, -cx, -cy) == 0;
                // a single interior point is admissible only if it is 0
                if (interior2 == 2 && originOnBoundary) continue;
                LatticePolytope t = toPoly({{ax, ay}, {bx, by}, {cx, cy}});
                if (seen.insert(flat(canonicalForm(t))).second) queue.push_back(t);
            }

    // grow hulls by one box point at a time; interior stays inside {0}
    std::vector<LatticePolytope> reflexives;
    std::set<std::vector<Int>> reflexSeen;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        LatticePolytope p = queue[qi];
        if (p.originInterior()) {
            bool allOne = true;
            for (const auto& f : p.facets())
                if (f.offset != 1) allOne = false;
            if (allOne && reflexSeen.insert(flat(canonicalForm(p))).second)
                reflexives.push_back(p);
        }
        for (auto [x, y] : pts) {
            IntVec q = intVec({x, y});
            if (p.contains(q)) continue;
            std::vector<IntVec> vs = p.vertices();
            vs.push_back(q);
            LatticePolytope grown = LatticePolytope::fromVertices(vs);
            auto inner = grown.latticePoints(1, true);
            if (inner.size() > 1) continue;
            if (inner.size() == 1 && !inner[0].isZero()) continue;
            if (seen.insert(flat(canonicalForm(grown))).second) queue.push_back(grown);
        }
    }

    // assemble the catalog sorted by canonical form, then link dual classes
    std::vector<PolygonClass> catalog;
    for (const auto& p : reflexives) {
        PointCount pc = countPoints(p);
        catalog.push_back(PolygonClass{p, canonicalForm(p), pc.l, pc.lStar, degree(p), -1});
    }
    std::sort(catalog.begin(), catalog.end(),
              [](const PolygonClass& a, const PolygonClass& b) {
                  return flat(a.canonical) < flat(b.canonical);
              });
    for (auto& c : catalog) {
        std::vector<Int> dualKey = flat(canonicalForm(dual(c.poly)));
        c.dualIndex = -1;
        for (size_t i = 0; i < catalog.size(); ++i)
            if (flat(catalog[i].canonical) == dualKey) {
                c.dualIndex = static_cast<Index>(i);
                break;
            }
        if (c.dualIndex < 0)
            throw InternalConsistencyError("polygon catalog is not closed under duality");
    }
    return catalog;
}

std::vector<Check12Row> check12(const std::vector<PolygonClass>& catalog) {
    std::vector<Check12Row> rows;
    for (size_t i = 0; i < catalog.size(); ++i) {
        Check12Row r;
        r.index = static_cast<Index>(i);
        r.boundary = catalog[i].l - catalog[i].lStar;
        const PolygonClass& d = catalog[static_cast<size_t>(catalog[i].dualIndex)];
        r.dualBoundary = d.l - d.lStar;
        r.ok = r.boundary + r.dualBoundary == 12;
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------

namespace {

void weightSearch(Index slots, const Rat& remaining, const Int& minVal, std::vector<Int>& cur,
                  std::vector<std::vector<Int>>& out) {
    if (slots == 1) {
        // 1/d = remaining exactly
        if (numerator(remaining) == 1 && denominator(remaining) >= minVal) {
            cur.push_back(denominator(remaining));
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    // 1/d <= remaining and slots/d >= remaining
    Int lo = floorDiv(denominator(remaining) + numerator(remaining) - 1, numerator(remaining));
    lo = std::max(lo, minVal);
    Int hi = floorDiv(Int(slots) * denominator(remaining), numerator(remaining));
    for (Int d = lo; d <= hi; ++d) {
        Rat rest = remaining - Rat(1) / Rat(d);
        if (rest <= 0) continue;
        cur.push_back(d);
        weightSearch(slots - 1, rest, d, cur, out);
        cur.pop_back();
    }
}

WeightSystem makeSystem(Index n, std::vector<Int> dValues) {
    WeightSystem w;
    w.n = n;
    w.d = 1;
    for (const auto& d : dValues) w.d = boost::multiprecision::lcm(w.d, d);
    for (const auto& d : dValues) w.weights.push_back(w.d / d);
    Int prod = 1;
    for (const auto& d : dValues) prod *= d;
    w.groupOrder = prod / (w.d * w.d);
    w.dValues = std::move(dValues);
    Int g = contentOf(w.weights);
    if (g != 1) throw InternalConsistencyError("weight system with non-primitive weights");
    return w;
}

} // namespace

std::vector<WeightSystem> enumerateWeightSystems(Index n) {
    if (n < 1 || n > 5)
        throw PreconditionError("enumerate_weight_systems: n must be between 1 and 5");
    std::vector<std::vector<Int>> sols;
    std::vector<Int> cur;
    weightSearch(n + 1, Rat(1), Int(2), cur, sols);
    std::sort(sols.begin(), sols.end());
    std::vector<WeightSystem> out;
    out.reserve(sols.size());
    for (auto& s : sols) out.push_back(makeSystem(n, std::move(s)));
    return out;
}

LatticePolytope simplexFromWeights(const WeightSystem& w) {
    const Index n = w.n;
    IntMat wRow(1, n + 1);
    for (Index i = 0; i <= n; ++i) wRow(0, i) = w.weights[static_cast<size_t>(i)];
    IntMat basis = kernelRows(wRow); // n x (n+1), saturated

    RatMat bt(n + 1, n);
    for (Index i = 0; i <= n; ++i)
        for (Index j = 0; j < n; ++j) bt(i, j) = Rat(basis(j, i));

    std::vector<IntVec> verts;
    for (Index i = 0; i <= n; ++i) {
        IntVec p = IntVec::Constant(n + 1, Int(-1));
        p[i] = w.dValues[static_cast<size_t>(i)] - 1;
        RatMat rhs(n + 1, 1);
        for (Index r = 0; r <= n; ++r) rhs(r, 0) = Rat(p[r]);
        auto sol = solveRational(bt, rhs);
        if (!sol) throw InternalConsistencyError("simplex vertex outside the weight lattice");
        IntVec c(n);
        for (Index j = 0; j < n; ++j) {
            if (!isInteger((*sol)(j, 0)))
                throw InternalConsistencyError("simplex vertex has non-integral coordinates");
            c[j] = numerator((*sol)(j, 0));
        }
        verts.push_back(std::move(c));
    }
    LatticePolytope p = LatticePolytope::fromVertices(verts);
    for (const auto& f : p.facets())
        if (f.offset != 1)
            throw InternalConsistencyError("weight simplex is not reflexive");
    return p;
}

SimplexMatrixReport simplexMatrixCheck(const LatticePolytope& p) {
    const Index n = p.dim();
    if (static_cast<Index>(p.vertices().size()) != n + 1)
        throw PreconditionError("simplex_matrix_check: polytope is not a simplex");
    for (const auto& f : p.facets())
        if (f.offset != 1)
            throw PreconditionError("simplex_matrix_check: polytope is not reflexive");

    // l_j = the unique facet normal with <p_j, l_j> != -1
    std::vector<Index> opposite(static_cast<size_t>(n) + 1, -1);
    for (Index j = 0; j <= n; ++j) {
        for (Index k = 0; k < static_cast<Index>(p.facets().size()); ++k) {
            if (p.facets()[static_cast<size_t>(k)].normal.dot(
                    p.vertices()[static_cast<size_t>(j)]) != -1) {
                if (opposite[static_cast<size_t>(j)] >= 0)
                    throw PreconditionError("simplex_matrix_check: vertex off two facets");
                opposite[static_cast<size_t>(j)] = k;
            }
        }
        if (opposite[static_cast<size_t>(j)] < 0)
            throw PreconditionError("simplex_matrix_check: vertex lies on every facet");
    }

    SimplexMatrixReport rep;
    rep.b = IntMat(n + 1, n + 1);
    for (Index i = 0; i <= n; ++i)
        for (Index j = 0; j <= n; ++j)
            rep.b(i, j) = p.facets()[static_cast<size_t>(opposite[static_cast<size_t>(j)])]
                              .normal.dot(p.vertices()[static_cast<size_t>(i)]);

    rep.symmetric = rep.b == rep.b.transpose();
    {
        IntMat h = hnfOf(rep.b);
        rep.rank = 0;
        for (Index i = 0; i < h.rows(); ++i)
            if (!h.row(i).isZero()) ++rep.rank;
    }
    rep.offDiagonalMinusOne = true;
    for (Index i = 0; i <= n; ++i)
        for (Index j = 0; j <= n; ++j)
            if (i != j && rep.b(i, j) != -1) rep.offDiagonalMinusOne = false;
    Rat unit = 0;
    for (Index i = 0; i <= n; ++i) unit += Rat(1) / Rat(rep.b(i, i) + 1);
    rep.unitFractionIdentity = unit == 1;

    IntMat ker = kernelRows(rep.b);
    if (ker.rows() == 1) {
        IntVec v = ker.row(0);
        if (v.sum() < 0) v = -v;
        for (Index i = 0; i <= n; ++i) rep.weights.push_back(v[i]);
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// canonical representative of x modulo the row lattice of a square HNF basis
IntVec reduceModHnf(IntVec x, const IntMat& h) {
    for (Index i = h.rows() - 1; i >= 0; --i) {
        Int q = floorDiv(x[i], h(i, i));
        if (q != 0) x -= q * h.row(i).transpose();
    }
    return x;
}

struct QuotientGroup {
    IntMat hnf;                 // square HNF basis of the sublattice
    std::vector<IntVec> elems;  // all coset representatives

    IntVec add(const IntVec& a, const IntVec& b) const { return reduceModHnf(a + b, hnf); }
};

std::vector<IntVec> closure(const QuotientGroup& g, std::vector<IntVec> gens) {
    std::set<std::vector<Int>> seen;
    auto key = [](const IntVec& v) {
        std::vector<Int> k;
        for (Index i = 0; i < v.size(); ++i) k.push_back(v[i]);
        return k;
    };
    for (auto& x : gens) x = reduceModHnf(x, g.hnf);
    std::vector<IntVec> out;
    std::vector<IntVec> work = gens;
    work.push_back(reduceModHnf(IntVec::Zero(g.hnf.rows()), g.hnf));
    while (!work.empty()) {
        IntVec x = std::move(work.back());
        work.pop_back();
        if (!seen.insert(key(x)).second) continue;
        out.push_back(x);
        for (const auto& y : gens) work.push_back(g.add(x, y));
    }
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

std::vector<Int> subgroupKey(const std::vector<IntVec>& elems) {
    std::vector<Int> k;
    for (const auto& e : elems)
        for (Index i = 0; i < e.size(); ++i) k.push_back(e[i]);
    return k;
}

} // namespace

IntermediateLatticesReport intermediateLattices(const WeightSystem& w) {
    const Index n = w.n;
    if (n > 3)
        throw PreconditionError("intermediate_lattices: supported only for n <= 3");

    IntMat wRow(1, n + 1);
    for (Index i = 0; i <= n; ++i) wRow(0, i) = w.weights[static_cast<size_t>(i)];
    IntMat basis = kernelRows(wRow); // rows span M(w)

    // vertex coordinates of Delta(w) in the M(w) basis generate M_B
    RatMat bt(n + 1, n);
    for (Index i = 0; i <= n; ++i)
        for (Index j = 0; j < n; ++j) bt(i, j) = Rat(basis(j, i));
    IntMat vertexCoords(n + 1, n);
    for (Index i = 0; i <= n; ++i) {
        IntVec p = IntVec::Constant(n + 1, Int(-1));
        p[i] = w.dValues[static_cast<size_t>(i)] - 1;
        RatMat rhs(n + 1, 1);
        for (Index r = 0; r <= n; ++r) rhs(r, 0) = Rat(p[r]);
        auto sol = solveRational(bt, rhs);
        for (Index j = 0; j < n; ++j) vertexCoords(i, j) = numerator((*sol)(j, 0));
    }

    IntermediateLatticesReport rep;
    rep.groupInvariants = snf(vertexCoords);

    QuotientGroup g;
    g.hnf = hnfBasis(vertexCoords);

    // all elements: closure of the standard generators
    {
        std::vector<IntVec> gens;
        for (Index i = 0; i < n; ++i) {
            IntVec e = IntVec::Zero(n);
            e[i] = 1;
            gens.push_back(e);
        }
        g.elems = closure(g, gens);
    }

    // subgroups: closures of up to three elements (the group has rank <= 3)
    std::map<std::vector<Int>, std::vector<IntVec>> subgroups;
    const size_t ne = g.elems.size();
    for (size_t a = 0; a < ne; ++a)
        for (size_t b = a; b < ne; ++b)
            for (size_t c = b; c < ne; ++c) {
                auto sub = closure(g, {g.elems[a], g.elems[b], g.elems[c]});
                subgroups.emplace(subgroupKey(sub), std::move(sub));
            }
    rep.subgroupCount = static_cast<Index>(subgroups.size());

    // symmetry action: coordinate permutations preserving the d-values
    std::vector<IntMat> actions;
    {
        std::vector<Index> perm(static_cast<size_t>(n) + 1);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool keep = true;
            for (Index i = 0; i <= n; ++i)
                if (w.dValues[static_cast<size_t>(perm[static_cast<size_t>(i)])] !=
                    w.dValues[static_cast<size_t>(i)])
                    keep = false;
            if (!keep) continue;
            // matrix of the permutation in the M(w) basis
            IntMat permuted(n, n + 1);
            for (Index r = 0; r < n; ++r)
                for (Index c = 0; c <= n; ++c)
                    permuted(r, perm[static_cast<size_t>(c)]) = basis(r, c);
            RatMat rhs(n + 1, n);
            for (Index i = 0; i <= n; ++i)
                for (Index j = 0; j < n; ++j) rhs(i, j) = Rat(permuted(j, i));
            auto sol = solveRational(bt, rhs); // columns are coord vectors
            IntMat act(n, n);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) {
                    if (!sol || !isInteger((*sol)(j, i)))
                        throw InternalConsistencyError("weight symmetry does not preserve M(w)");
                    act(i, j) = numerator((*sol)(j, i));
                }
            actions.push_back(std::move(act));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    // orbits of subgroups under the symmetry action
    std::set<std::vector<Int>> orbitSeen;
    for (const auto& [k, sub] : subgroups) {
        std::vector<Int> best;
        for (const auto& act : actions) {
            std::vector<IntVec> mapped;
            mapped.reserve(sub.size());
            for (const auto& e : sub)
                mapped.push_back(reduceModHnf((e.transpose() * act).transpose(), g.hnf));
            std::sort(mapped.begin(), mapped.end(), LexLess{});
            auto cand = subgroupKey(mapped);
            if (best.empty() || cand < best) best = std::move(cand);
        }
        if (!orbitSeen.insert(best).second) continue;

        // lattice M_H = M_B + lifts of the subgroup elements
        IntMat stack(vertexCoords.rows() + static_cast<Index>(sub.size()), n);
        stack.topRows(vertexCoords.rows()) = vertexCoords;
        for (Index i = 0; i < static_cast<Index>(sub.size()); ++i)
            stack.row(vertexCoords.rows() + i) = sub[static_cast<size_t>(i)];
        IntMat latticeBasis = hnfBasis(stack);

        RatMat lt(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) lt(i, j) = Rat(latticeBasis(j, i));
        std::vector<IntVec> verts;
        for (Index i = 0; i <= n; ++i) {
            RatMat rhs(n, 1);
            for (Index r = 0; r < n; ++r) rhs(r, 0) = Rat(vertexCoords(i, r));
            auto sol = solveRational(lt, rhs);
            IntVec c(n);
            for (Index j = 0; j < n; ++j) {
                if (!sol || !isInteger((*sol)(j, 0)))
                    throw InternalConsistencyError("intermediate lattice misses a vertex");
                c[j] = numerator((*sol)(j, 0));
            }
            verts.push_back(std::move(c));
        }
        LatticePolytope q = LatticePolytope::fromVertices(verts);
        ReflexivePairInfo info = isReflexive(q);
        if (!info.isReflexive)
            throw InternalConsistencyError("intermediate lattice yields a non-reflexive simplex");
        rep.representatives.push_back(std::move(q));
    }
    rep.orbitCount = static_cast<Index>(rep.representatives.size());
    return rep;
}

} // namespace reflex
