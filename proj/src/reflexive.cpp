#include "reflex/reflexive.hpp"

#include "reflex/linalg.hpp"

namespace reflex {

namespace {

IntMat vertexMatrix(const LatticePolytope& p) {
    IntMat m(static_cast<Index>(p.vertices().size()), p.dim());
    for (Index i = 0; i < m.rows(); ++i) m.row(i) = p.vertices()[static_cast<size_t>(i)];
    return m;
}

Int productOfInvariants(const std::vector<Int>& inv) {
    Int r = 1;
    for (const auto& d : inv) r *= d;
    return r;
}

void requireReflexive(const LatticePolytope& p, const char* op) {
    for (const auto& f : p.facets())
        if (f.offset != 1)
            throw PreconditionError(std::string(op) + ": facet offset " + f.offset.str() +
                                    " != 1: not reflexive");
}

} // namespace

ReflexivePairInfo isReflexive(const LatticePolytope& p) {
    ReflexivePairInfo info;
    for (const auto& f : p.facets()) info.facetOffsets.push_back(f.offset);

    if (!p.originInterior()) {
        info.isReflexive = false;
        info.reason = "origin is not strictly interior";
        return info;
    }
    bool all1 = true;
    for (const auto& f : p.facets())
        if (f.offset != 1) {
            all1 = false;
            info.reason = "facet offset " + f.offset.str() + " != 1";
            break;
        }
    info.isReflexive = all1;

    // cross-validate against delta-vector symmetry (Hibi's criterion)
    DeltaVector dv = deltaVector(p);
    if (dv.symmetric() != info.isReflexive)
        throw InternalConsistencyError(
            "facet offsets and delta-vector symmetry disagree on reflexivity");

    IntMat vm = vertexMatrix(p);
    info.vertexLatticeIndex = 1;
    for (const auto& d : snf(vm)) info.vertexLatticeIndex *= d;

    if (info.isReflexive) {
        info.pairGroup = fundamentalGroup(p, GroupMode::Pair);
        info.polytopeGroup = fundamentalGroup(p, GroupMode::Polytope);
    }
    return info;
}

std::vector<Int> fundamentalGroup(const LatticePolytope& p, GroupMode mode) {
    requireReflexive(p, "fundamental_group");
    LatticePolytope q = dual(p);
    if (mode == GroupMode::Pair) {
        // N / (sublattice generated by the vertices of the dual)
        return snf(vertexMatrix(q));
    }
    // M^Delta / M_Delta: M_Delta spanned by vertices of p, M^Delta dual to
    // the span of the dual's vertices; the quotient is presented by B_M B_N^T
    IntMat bm = hnfBasis(vertexMatrix(p));
    IntMat bn = hnfBasis(vertexMatrix(q));
    IntMat rel = bm * bn.transpose();
    return snf(rel);
}

// ---------------------------------------------------------------------------

namespace {

struct HodgeSide {
    Int value;      ///< full formula
    Int affine;     ///< without the codimension-2 correction
    std::vector<FaceContribution> table;
};

// l(p) - n - 1 - sum_{codim 1} l*(F) + sum_{codim 2} l*(F) l*(F*),
// with the per-face table of both correction sums.
HodgeSide hodgeFormula(const LatticePolytope& p) {
    const Index n = p.dim();
    HodgeSide side;
    Int base = countPoints(p).l - n - 1;

    Int facetSum = 0;
    std::vector<FaceContribution> table;
    for (const Face& f : p.faces(n - 1)) {
        FaceContribution c;
        c.codim = 1;
        c.vertexIndices = f.vertexIndices;
        c.lStar = countPoints(p, f).lStar;
        const Face& fd = dualFace(p, f);
        c.dualLStar = countPoints(dual(p), fd).lStar;
        c.deg = degree(p, f);
        c.dualDeg = 0; // dual of a facet is a vertex; degree undefined there
        facetSum += c.lStar;
        table.push_back(std::move(c));
    }
    Int corr = 0;
    if (n >= 2) {
        for (const Face& f : p.faces(n - 2)) {
            FaceContribution c;
            c.codim = 2;
            c.vertexIndices = f.vertexIndices;
            c.lStar = countPoints(p, f).lStar;
            const Face& fd = dualFace(p, f);
            c.dualLStar = countPoints(dual(p), fd).lStar;
            c.deg = (f.dim >= 1) ? degree(p, f) : Int(0);
            c.dualDeg = (fd.dim >= 1) ? degree(dual(p), fd) : Int(0);
            corr += c.lStar * c.dualLStar;
            table.push_back(std::move(c));
        }
    }
    side.affine = base - facetSum;
    side.value = side.affine + corr;
    side.table = std::move(table);
    return side;
}

} // namespace

Int hodgeHN21(const LatticePolytope& p) {
    if (p.dim() < 4)
        throw PreconditionError("hodge: requires n >= 4 (use the K3 operations for n = 3)");
    requireReflexive(p, "hodge");
    return hodgeFormula(p).value;
}

Int hodgeH11(const LatticePolytope& p) {
    if (p.dim() < 4)
        throw PreconditionError("hodge: requires n >= 4 (use the K3 operations for n = 3)");
    requireReflexive(p, "hodge");
    return hodgeFormula(dual(p)).value;
}

HodgeReport hodgeReport(const LatticePolytope& p) {
    if (p.dim() < 4)
        throw PreconditionError("hodge: requires n >= 4 (use the K3 operations for n = 3)");
    requireReflexive(p, "hodge");
    HodgeReport rep;
    rep.n = p.dim();
    rep.reflexive = true;
    HodgeSide primal = hodgeFormula(p);
    HodgeSide dualSide = hodgeFormula(dual(p));
    rep.hN21 = primal.value;
    rep.hN21Affine = primal.affine;
    rep.h11 = dualSide.value;
    rep.picardAmbient = countPoints(dual(p)).l - p.dim() - 1;
    rep.faceTable = std::move(primal.table);
    if (p.dim() == 4) rep.euler = eulerCY3(p);
    return rep;
}

Int eulerCY3(const LatticePolytope& p) {
    if (p.dim() != 4) throw PreconditionError("euler: requires n = 4");
    requireReflexive(p, "euler");
    Int acc = 0;
    for (const Face& f : p.faces(1)) acc += degree(p, f) * degree(dual(p), dualFace(p, f));
    for (const Face& f : p.faces(2)) acc -= degree(p, f) * degree(dual(p), dualFace(p, f));
    return acc;
}

Int check24(const LatticePolytope& p) {
    if (p.dim() != 3) throw PreconditionError("k3: requires n = 3");
    requireReflexive(p, "k3");
    Int acc = 0;
    for (const Face& f : p.faces(1)) acc += degree(p, f) * degree(dual(p), dualFace(p, f));
    return acc;
}

K3Ranks k3EdgeRank(const LatticePolytope& p) {
    if (p.dim() != 3) throw PreconditionError("k3: requires n = 3");
    requireReflexive(p, "k3");
    LatticePolytope q = dual(p);

    Int edgeSumP = 0, edgeSumQ = 0;
    bool equality = true;
    for (const Face& f : p.faces(1)) {
        Int dp = degree(p, f);
        Int dq = degree(q, dualFace(p, f));
        edgeSumP += dp;
        edgeSumQ += dq;
        if (dp != 1 && dq != 1) equality = false;
    }

    K3Ranks r;
    r.rankF = Int(q.vertices().size()) + 21 - edgeSumP;
    r.rankG = Int(p.vertices().size()) + 21 - edgeSumQ;
    r.sum = r.rankF + r.rankG;
    r.boundHolds = r.sum <= 20;
    r.equalityCondition = equality;
    return r;
}

PyramidCheck eulerOpenPartZero(const LatticePolytope& p) {
    if (!p.originInterior())
        throw PreconditionError("euler_open_part_zero: origin is not strictly interior");
    PyramidCheck c;
    c.degreeTotal = degree(p);
    const Index n = p.dim();
    for (const Face& f : p.faces(n - 1)) {
        Int d = (f.dim == 0) ? Int(1) : degree(p, f);
        c.facetDegrees.push_back(d);
        Int offset = p.facets()[static_cast<size_t>(f.tightFacets[0])].offset;
        c.facetSum += offset * d;
    }
    c.ok = c.degreeTotal == c.facetSum;
    if (!c.ok)
        throw InternalConsistencyError("pyramid decomposition identity failed: d(p) = " +
                                       c.degreeTotal.str() + ", facet sum = " + c.facetSum.str());
    return c;
}

} // namespace reflex
