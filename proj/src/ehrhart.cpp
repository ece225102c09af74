#include "reflex/ehrhart.hpp"

namespace reflex {

Rat EhrhartPolynomial::eval(const Int& k) const {
    Rat acc = 0;
    Rat pw = 1;
    for (const auto& c : coeffs) {
        acc += c * pw;
        pw *= Rat(k);
    }
    return acc;
}

Int DeltaVector::sum() const {
    Int s = 0;
    for (const auto& x : psi) s += x;
    return s;
}

bool DeltaVector::symmetric() const {
    size_t n = psi.size() - 1;
    for (size_t i = 0; i <= n; ++i)
        if (psi[i] != psi[n - i]) return false;
    return true;
}

Int countScaled(const LatticePolytope& p, const Int& k) {
    if (k == 0) return 1;
    return Int(p.latticePoints(k).size());
}

Int countScaledInterior(const LatticePolytope& p, const Int& k) {
    return Int(p.latticePoints(k, true).size());
}

EhrhartPolynomial ehrhart(const LatticePolytope& p) {
    const Index n = p.dim();
    std::vector<Int> counts(static_cast<size_t>(n) + 1);
    for (Index k = 0; k <= n; ++k) counts[static_cast<size_t>(k)] = countScaled(p, Int(k));

    // exact Lagrange interpolation on the nodes 0..n
    EhrhartPolynomial e;
    e.degree = n;
    e.coeffs.assign(static_cast<size_t>(n) + 1, Rat(0));
    for (Index i = 0; i <= n; ++i) {
        // basis polynomial prod_{j != i} (t - j) / (i - j)
        std::vector<Rat> basis{Rat(1)};
        Rat denom = 1;
        for (Index j = 0; j <= n; ++j) {
            if (j == i) continue;
            basis.push_back(Rat(0));
            for (size_t c = basis.size() - 1; c > 0; --c)
                basis[c] = basis[c - 1] - Rat(j) * basis[c];
            basis[0] *= Rat(-j);
            denom *= Rat(i - j);
        }
        Rat w = Rat(counts[static_cast<size_t>(i)]) / denom;
        for (size_t c = 0; c < basis.size(); ++c) e.coeffs[c] += w * basis[c];
    }
    return e;
}

DeltaVector deltaVector(const LatticePolytope& p) {
    const Index n = p.dim();
    std::vector<Int> counts(static_cast<size_t>(n) + 2);
    for (Index k = 0; k <= n + 1; ++k) counts[static_cast<size_t>(k)] = countScaled(p, Int(k));

    // psi_i = sum_j (-1)^j C(n+1, j) l((i-j) p)
    std::vector<Int> binom(static_cast<size_t>(n) + 2);
    binom[0] = 1;
    for (Index j = 1; j <= n + 1; ++j)
        binom[static_cast<size_t>(j)] =
            binom[static_cast<size_t>(j) - 1] * (n + 2 - j) / j;

    auto coefficient = [&](Index i) {
        Int acc = 0;
        for (Index j = 0; j <= std::min(i, n + 1); ++j) {
            Int term = binom[static_cast<size_t>(j)] * counts[static_cast<size_t>(i - j)];
            acc += (j % 2 == 0) ? term : -term;
        }
        return acc;
    };

    DeltaVector d;
    d.psi.resize(static_cast<size_t>(n) + 1);
    for (Index i = 0; i <= n; ++i) {
        d.psi[static_cast<size_t>(i)] = coefficient(i);
        if (d.psi[static_cast<size_t>(i)] < 0)
            throw InternalConsistencyError("delta vector has a negative coefficient psi_" +
                                           std::to_string(i));
    }
    if (coefficient(n + 1) != 0)
        throw InternalConsistencyError("delta vector series does not vanish in degree n+1");

    d.phi.resize(static_cast<size_t>(n) + 2);
    for (Index i = 0; i <= n + 1; ++i)
        d.phi[static_cast<size_t>(i)] = (i == 0) ? Int(0) : d.psi[static_cast<size_t>(n + 1 - i)];
    return d;
}

ReciprocityReport checkReciprocity(const LatticePolytope& p, const Int& kMax) {
    if (kMax < 1) throw PreconditionError("check_reciprocity: k_max must be >= 1");
    EhrhartPolynomial e = ehrhart(p);
    const bool oddDim = p.dim() % 2 == 1;
    ReciprocityReport rep;
    for (Int k = 1; k <= kMax; ++k) {
        Rat v = e.eval(-k);
        if (oddDim) v = -v;
        ReciprocityRow row;
        row.k = k;
        if (!isInteger(v)) throw InternalConsistencyError("Ehrhart value at -k is not integral");
        row.lambdaAtMinusK = numerator(v);
        row.interiorCount = countScaledInterior(p, k);
        row.ok = row.lambdaAtMinusK == row.interiorCount;
        if (!row.ok) rep.allOk = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace reflex
