#include "reflex/jacobian.hpp"

#include <algorithm>

namespace reflex {

Index GradedSlice::indexOf(const IntVec& m) const {
    auto it = std::lower_bound(points.begin(), points.end(), m, LexLess{});
    if (it == points.end() || *it != m) return -1;
    return static_cast<Index>(it - points.begin());
}

GradedSlice slice(const LatticePolytope& p, Index k) {
    if (k < 0) throw PreconditionError("slice: negative degree");
    GradedSlice s;
    s.k = k;
    if (k == 0)
        s.points.push_back(IntVec::Zero(p.dim()));
    else
        s.points = p.latticePoints(Int(k));
    return s;
}

std::vector<Section> derivativeSections(const LatticePolytope& p, const LaurentPolynomial& f) {
    const Index n = p.dim();
    if (f.dim() != n) throw PreconditionError("derivative_sections: dimension mismatch");
    for (const auto& [e, c] : f.terms())
        if (!p.contains(e))
            throw PreconditionError("derivative_sections: support exponent outside the polytope");
    std::string missing;
    for (const auto& v : p.vertices()) {
        if (f.coefficient(v) == 0) {
            std::string s = "(";
            for (Index i = 0; i < n; ++i) s += (i ? "," : "") + v[i].str();
            missing += (missing.empty() ? "" : " ") + s + ")";
        }
    }
    if (!missing.empty())
        throw PreconditionError(
            "derivative_sections: Newton polytope mismatch, vertices without coefficient: " +
            missing);

    std::vector<Section> sections(static_cast<size_t>(n) + 1);
    for (const auto& [e, c] : f.terms()) {
        sections[0].coeffs.emplace_back(e, c);
        for (Index i = 0; i < n; ++i)
            if (e[i] != 0) sections[static_cast<size_t>(i) + 1].coeffs.emplace_back(e, Rat(e[i]) * c);
    }
    return sections;
}

// ---------------------------------------------------------------------------

namespace {

struct Context {
    LatticePolytope p;
    Index n = 0;
    std::vector<GradedSlice> slices; // degrees 0..n+1
    /// sections after full row reduction over the support, integer-scaled;
    /// row operations on the sections change neither the ideal slice spans
    /// nor any rank below, and they shrink the support of sparse families
    std::vector<std::vector<std::pair<IntVec, Int>>> sections;

    const GradedSlice& sliceAt(Index k) const { return slices[static_cast<size_t>(k)]; }
};

Context makeContext(const LatticePolytope& p, const LaurentPolynomial& f) {
    Context ctx{p, p.dim(), {}, {}};
    for (Index k = 0; k <= ctx.n + 1; ++k) ctx.slices.push_back(slice(p, k));

    std::vector<Section> raw = derivativeSections(p, f);
    std::vector<IntVec> support;
    for (const auto& [e, c] : f.terms()) support.push_back(e);

    const Index rows = static_cast<Index>(raw.size());
    const Index cols = static_cast<Index>(support.size());
    RatMat m = RatMat::Zero(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (const auto& [e, c] : raw[static_cast<size_t>(r)].coeffs) {
            auto it = std::lower_bound(support.begin(), support.end(), e, LexLess{});
            m(r, static_cast<Index>(it - support.begin())) = c;
        }

    // Gauss-Jordan over the support columns
    Index pr = 0;
    for (Index c = 0; c < cols && pr < rows; ++c) {
        Index piv = -1;
        for (Index r = pr; r < rows; ++r)
            if (m(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != pr) m.row(pr).swap(m.row(piv));
        m.row(pr) /= m(pr, c);
        for (Index r = 0; r < rows; ++r)
            if (r != pr && m(r, c) != 0) m.row(r) -= m(r, c) * m.row(pr);
        ++pr;
    }
    if (pr < rows)
        throw InternalConsistencyError("derivative sections are linearly dependent");

    ctx.sections.resize(static_cast<size_t>(rows));
    for (Index r = 0; r < rows; ++r) {
        Int den = 1;
        for (Index c = 0; c < cols; ++c)
            den = boost::multiprecision::lcm(den, denominator(m(r, c)));
        for (Index c = 0; c < cols; ++c) {
            if (m(r, c) == 0) continue;
            ctx.sections[static_cast<size_t>(r)].emplace_back(support[static_cast<size_t>(c)],
                                                              numerator(m(r, c) * Rat(den)));
        }
    }
    return ctx;
}

/// Columns of the multiplication map (F_0..F_n) x S^{k-1} -> S^k. The filter
/// restricts the S^{k-1} monomials (by index into slice k-1).
std::vector<SparseIntCol> buildColumns(const Context& ctx, Index k,
                                       const std::vector<char>* keep = nullptr) {
    const GradedSlice& src = ctx.sliceAt(k - 1);
    const GradedSlice& dst = ctx.sliceAt(k);
    std::vector<SparseIntCol> cols;
    for (const auto& section : ctx.sections) {
        for (Index mi = 0; mi < src.size(); ++mi) {
            if (keep && !(*keep)[static_cast<size_t>(mi)]) continue;
            SparseIntCol col;
            col.reserve(section.size());
            for (const auto& [s, c] : section) {
                Index row = dst.indexOf(src.points[static_cast<size_t>(mi)] + s);
                if (row < 0)
                    throw InternalConsistencyError("product monomial escaped the target slice");
                col.emplace_back(row, c);
            }
            std::sort(col.begin(), col.end());
            cols.push_back(std::move(col));
        }
    }
    std::stable_sort(cols.begin(), cols.end(),
                     [](const SparseIntCol& a, const SparseIntCol& b) { return a.size() < b.size(); });
    return cols;
}

RankEngine makeEngine(const RankMode& mode) {
    return mode.exact ? RankEngine() : RankEngine(mode.prime);
}

/// codimension of the smallest face of k*p containing each slice point
std::vector<Index> pointCodims(const Context& ctx, Index k) {
    const GradedSlice& s = ctx.sliceAt(k);
    const auto& facets = ctx.p.facets();
    const auto& verts = ctx.p.vertices();
    std::vector<Index> codim(static_cast<size_t>(s.size()), 0);
    for (Index i = 0; i < s.size(); ++i) {
        const IntVec& m = s.points[static_cast<size_t>(i)];
        std::vector<Index> tight;
        for (Index j = 0; j < static_cast<Index>(facets.size()); ++j)
            if (facets[static_cast<size_t>(j)].normal.dot(m) ==
                -Int(k) * facets[static_cast<size_t>(j)].offset)
                tight.push_back(j);
        if (tight.empty()) continue;
        std::vector<Index> onAll;
        for (Index vi = 0; vi < static_cast<Index>(verts.size()); ++vi) {
            bool all = true;
            for (Index j : tight)
                if (facets[static_cast<size_t>(j)].normal.dot(verts[static_cast<size_t>(vi)]) !=
                    -facets[static_cast<size_t>(j)].offset) {
                    all = false;
                    break;
                }
            if (all) onAll.push_back(vi);
        }
        // dimension of the face spanned by these vertices
        for (Index d = 0; d <= ctx.n; ++d) {
            bool found = false;
            for (const Face& g : ctx.p.faces(d))
                if (g.vertexIndices == onAll) {
                    codim[static_cast<size_t>(i)] = ctx.n - d;
                    found = true;
                    break;
                }
            if (found) break;
        }
    }
    return codim;
}

} // namespace

JacobianReport jacobianDims(const LatticePolytope& p, const LaurentPolynomial& f,
                            const RankMode& mode) {
    Context ctx = makeContext(p, f);
    const Index n = ctx.n;

    JacobianReport rep;
    rep.exactMode = mode.exact;
    rep.prime = mode.prime;
    rep.seed = mode.seed;
    rep.dimsR.assign(static_cast<size_t>(n) + 2, Int(0));
    rep.dimsR[0] = 1;
    for (Index k = 1; k <= n + 1; ++k) {
        RankEngine engine = makeEngine(mode);
        for (const auto& col : buildColumns(ctx, k)) engine.addColumn(col);
        rep.dimsR[static_cast<size_t>(k)] = Int(ctx.sliceAt(k).size()) - engine.rank();
    }

    DeltaVector dv = deltaVector(p);
    rep.psi = dv.psi;
    rep.regular = rep.dimsR[static_cast<size_t>(n) + 1] == 0;
    for (Index k = 0; k <= n && rep.regular; ++k)
        if (rep.dimsR[static_cast<size_t>(k)] != dv.psi[static_cast<size_t>(k)])
            rep.regular = false;
    return rep;
}

IdealFiltrationReport idealFiltrationDims(const LatticePolytope& p, const LaurentPolynomial& f,
                                          const RankMode& mode) {
    JacobianReport jac = jacobianDims(p, f, mode);
    if (!jac.regular)
        throw PreconditionError("ideal_filtration_dims: f is not regular");

    Context ctx = makeContext(p, f);
    const Index n = ctx.n;
    IdealFiltrationReport rep;
    rep.chain.assign(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n) + 2, Int(0)));

    for (Index k = 1; k <= n + 1; ++k) {
        RankEngine engine = makeEngine(mode);
        for (const auto& col : buildColumns(ctx, k)) engine.addColumn(col);
        const Index base = engine.rank();

        // stream unit monomial columns by ascending codimension: the ideal
        // I^(i) is spanned by points of codimension < i
        std::vector<Index> codim = pointCodims(ctx, k);
        std::vector<std::vector<Index>> byCodim(static_cast<size_t>(n) + 1);
        for (Index i = 0; i < ctx.sliceAt(k).size(); ++i)
            byCodim[static_cast<size_t>(codim[static_cast<size_t>(i)])].push_back(i);
        Index acc = base;
        for (Index c = 0; c < n; ++c) {
            for (Index idx : byCodim[static_cast<size_t>(c)]) {
                SparseIntCol unit{{idx, Int(1)}};
                engine.addColumn(unit);
            }
            acc = engine.rank();
            rep.chain[static_cast<size_t>(c)][static_cast<size_t>(k)] = Int(acc - base);
        }
    }
    rep.dimsH = rep.chain[0];

    rep.symmetric = true;
    for (Index i = 1; i <= n; ++i)
        if (rep.dimsH[static_cast<size_t>(i)] != rep.dimsH[static_cast<size_t>(n + 1 - i)])
            rep.symmetric = false;
    return rep;
}

DualizingReport dualizingDims(const LatticePolytope& p, const LaurentPolynomial& f,
                              const RankMode& mode) {
    JacobianReport jac = jacobianDims(p, f, mode);
    if (!jac.regular)
        throw PreconditionError("dualizing_dims: f is not regular");

    Context ctx = makeContext(p, f);
    const Index n = ctx.n;
    DualizingReport rep;
    rep.dimsD.assign(static_cast<size_t>(n) + 2, Int(0));
    rep.phi = deltaVector(p).phi;

    for (Index k = 1; k <= n + 1; ++k) {
        Int lStar = countScaledInterior(p, Int(k));
        std::vector<Index> codim = pointCodims(ctx, k - 1);
        std::vector<char> keep(static_cast<size_t>(ctx.sliceAt(k - 1).size()), 0);
        bool any = false;
        for (size_t i = 0; i < keep.size(); ++i)
            if (k - 1 >= 1 && codim[i] == 0) { keep[i] = 1; any = true; }
        Index rk = 0;
        if (any) {
            RankEngine engine = makeEngine(mode);
            for (const auto& col : buildColumns(ctx, k, &keep)) engine.addColumn(col);
            rk = engine.rank();
        }
        rep.dimsD[static_cast<size_t>(k)] = lStar - rk;
    }

    for (Index k = 0; k <= n + 1; ++k)
        if (rep.dimsD[static_cast<size_t>(k)] != rep.phi[static_cast<size_t>(k)])
            throw InternalConsistencyError(
                "dualizing module dimensions disagree with Phi in degree " + std::to_string(k) +
                " (regularity misdetection)");
    return rep;
}

GorensteinReport gorensteinPairingCheck(const LatticePolytope& p, const LaurentPolynomial& f,
                                        const RankMode& mode) {
    for (const auto& fc : p.facets())
        if (fc.offset != 1)
            throw PreconditionError("gorenstein_pairing_check: polytope is not reflexive");
    JacobianReport jac = jacobianDims(p, f, mode);
    if (!jac.regular)
        throw PreconditionError("gorenstein_pairing_check: f is not regular");

    Context ctx = makeContext(p, f);
    const Index n = ctx.n;

    // engine per degree, keeping the echelon data for basis extraction
    std::vector<RankEngine> engines;
    std::vector<std::vector<Index>> bases(static_cast<size_t>(n) + 1);
    for (Index k = 0; k <= n; ++k) {
        engines.push_back(makeEngine(mode));
        if (k >= 1)
            for (const auto& col : buildColumns(ctx, k)) engines.back().addColumn(col);
        for (Index i = 0; i < ctx.sliceAt(k).size(); ++i)
            if (engines.back().isFree(i)) bases[static_cast<size_t>(k)].push_back(i);
    }
    if (bases[static_cast<size_t>(n)].size() != 1)
        throw InternalConsistencyError("dim R^n != 1 on a reflexive polytope");
    const Index socle = bases[static_cast<size_t>(n)][0];

    GorensteinReport rep;
    rep.ok = true;
    for (Index k = 0; k <= n; ++k) rep.dims.push_back(Int(bases[static_cast<size_t>(k)].size()));

    for (Index i = 0; i <= n; ++i) {
        const auto& bi = bases[static_cast<size_t>(i)];
        const auto& bj = bases[static_cast<size_t>(n - i)];
        if (bi.size() != bj.size()) {
            rep.ok = false;
            rep.pairingRanks.push_back(0);
            continue;
        }
        IntMat pairing(static_cast<Index>(bi.size()), static_cast<Index>(bj.size()));
        for (Index a = 0; a < pairing.rows(); ++a)
            for (Index b = 0; b < pairing.cols(); ++b) {
                IntVec prod = ctx.sliceAt(i).points[static_cast<size_t>(bi[static_cast<size_t>(a)])] +
                              ctx.sliceAt(n - i).points[static_cast<size_t>(bj[static_cast<size_t>(b)])];
                Index row = ctx.sliceAt(n).indexOf(prod);
                if (row < 0) throw InternalConsistencyError("pairing product escaped degree n");
                SparseIntCol unit{{row, Int(1)}};
                SparseIntCol rem = engines[static_cast<size_t>(n)].reduce(unit);
                Int val = 0;
                for (const auto& [idx, v] : rem) {
                    if (idx != socle)
                        throw InternalConsistencyError("socle reduction left a non-socle term");
                    val = v;
                }
                pairing(a, b) = val;
            }
        Index rk = rank(pairing, mode);
        rep.pairingRanks.push_back(rk);
        if (rk != pairing.rows()) rep.ok = false;
    }
    return rep;
}

} // namespace reflex
