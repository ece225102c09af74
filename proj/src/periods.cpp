#include "reflex/periods.hpp"

#include "reflex/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace reflex {

Index PeriodSeries::compressionStep() const {
    Index g = 0;
    for (size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) g = std::gcd(g, static_cast<Index>(i));
    return g;
}

std::vector<Int> PeriodSeries::compressed() const {
    Index g = compressionStep();
    if (g <= 1) return coeffs;
    std::vector<Int> out;
    for (size_t i = 0; i < coeffs.size(); i += static_cast<size_t>(g)) out.push_back(coeffs[i]);
    return out;
}

PeriodSeries pi0(const LatticePolytope& p, Index kmax) {
    for (const auto& f : p.facets())
        if (f.offset != 1) throw PreconditionError("pi0: polytope is not reflexive");
    if (kmax < 0) throw PreconditionError("pi0: negative kmax");

    PeriodSeries s;
    for (const auto& m : p.latticePoints())
        if (!m.isZero()) s.boundaryPoints.push_back(m);

    // dist[e] = number of words m_{j_1} ... m_{j_t} with sum e; pruning keeps
    // only exponents that can still walk back to the origin in the remaining
    // steps, i.e. -e in (kmax - t) * p
    std::map<IntVec, Int, LexLess> dist;
    dist[IntVec::Zero(p.dim())] = 1;
    s.coeffs.assign(static_cast<size_t>(kmax) + 1, Int(0));
    s.coeffs[0] = 1;

    for (Index t = 1; t <= kmax; ++t) {
        std::map<IntVec, Int, LexLess> next;
        const Int remaining = kmax - t;
        for (const auto& [e, cnt] : dist) {
            for (const auto& m : s.boundaryPoints) {
                IntVec e2 = e + m;
                bool keep = true;
                for (const auto& fc : p.facets())
                    if (fc.normal.dot(e2) > remaining * fc.offset) { // -e2 outside remaining*p
                        keep = false;
                        break;
                    }
                if (!keep) continue;
                next[e2] += cnt;
            }
        }
        dist = std::move(next);
        auto it = dist.find(IntVec::Zero(p.dim()));
        if (it != dist.end()) s.coeffs[static_cast<size_t>(t)] = it->second;
    }
    return s;
}

// ---------------------------------------------------------------------------

Rat Recurrence::apply(const std::vector<Int>& c, Index i) const {
    Rat acc = 0;
    for (Index j = 0; j <= order; ++j) {
        if (i - j < 0 || i >= static_cast<Index>(c.size())) continue;
        Int pj = 0;
        Int pw = 1;
        for (const auto& coeff : polys[static_cast<size_t>(j)]) {
            pj += coeff * pw;
            pw *= Int(i);
        }
        acc += Rat(pj) * Rat(c[static_cast<size_t>(i - j)]);
    }
    return acc;
}

bool Recurrence::annihilates(const std::vector<Int>& c, Index from, Index to) const {
    for (Index i = std::max(from, order); i <= to; ++i)
        if (apply(c, i) != 0) return false;
    return true;
}

std::optional<Recurrence> fitRecurrence(const std::vector<Int>& series, Index maxOrder,
                                        Index maxDegree, Index holdout) {
    const Index kmax = static_cast<Index>(series.size()) - 1;

    // sweep candidate shapes by total size, then by order
    std::vector<std::pair<Index, Index>> shapes;
    for (Index s = 1; s <= maxOrder; ++s)
        for (Index d = 0; d <= maxDegree; ++d) shapes.emplace_back(s, d);
    std::sort(shapes.begin(), shapes.end(), [](auto a, auto b) {
        if (a.first + a.second != b.first + b.second)
            return a.first + a.second < b.first + b.second;
        return a.first < b.first;
    });

    for (auto [s, d] : shapes) {
        const Index unknowns = (s + 1) * (d + 1);
        if (kmax < unknowns + s + holdout) continue; // not enough coefficients
        const Index trainEnd = kmax - holdout;

        IntMat a(trainEnd - s + 1, unknowns);
        for (Index i = s; i <= trainEnd; ++i) {
            Index col = 0;
            for (Index j = 0; j <= s; ++j) {
                Int pw = 1;
                for (Index t = 0; t <= d; ++t) {
                    a(i - s, col++) = pw * series[static_cast<size_t>(i - j)];
                    pw *= Int(i);
                }
            }
        }
        IntMat ker = kernelRows(a);
        for (Index row = 0; row < ker.rows(); ++row) {
            Recurrence rec;
            rec.order = s;
            rec.degree = d;
            rec.polys.assign(static_cast<size_t>(s) + 1,
                             std::vector<Int>(static_cast<size_t>(d) + 1, Int(0)));
            Index col = 0;
            for (Index j = 0; j <= s; ++j)
                for (Index t = 0; t <= d; ++t)
                    rec.polys[static_cast<size_t>(j)][static_cast<size_t>(t)] = ker(row, col++);

            bool p0Nonzero = false;
            for (const auto& c : rec.polys[0])
                if (c != 0) p0Nonzero = true;
            if (!p0Nonzero) continue;
            if (!rec.annihilates(series, trainEnd + 1, kmax)) continue;

            // normalize: content 1 across all polynomials, leading coefficient
            // of p_0 positive
            Int g = 0;
            for (const auto& poly : rec.polys)
                for (const auto& c : poly) g = boost::multiprecision::gcd(g, c);
            Int lead = 0;
            for (auto it = rec.polys[0].rbegin(); it != rec.polys[0].rend(); ++it)
                if (*it != 0) { lead = *it; break; }
            if (lead < 0) g = -g;
            if (g != 0 && g != 1)
                for (auto& poly : rec.polys)
                    for (auto& c : poly) c /= g;
            return rec;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

Int hasseConstantTerm(const LaurentPolynomial& f, const Int& prime, const Int& maxPrime) {
    if (prime < 2) throw PreconditionError("hasse: modulus is not prime");
    for (Int d = 2; d * d <= prime; ++d)
        if (prime % d == 0) throw PreconditionError("hasse: modulus is not prime");
    if (prime > maxPrime)
        throw PreconditionError("hasse: prime exceeds the configured bound " + maxPrime.str());
    for (const auto& [e, c] : f.terms())
        if (!isInteger(c)) throw PreconditionError("hasse: coefficients must be integers");

    LatticePolytope newton = f.newtonPolytope();
    for (const auto& fc : newton.facets())
        if (fc.offset != 1)
            throw PreconditionError("hasse: Newton polytope is not reflexive");

    // exact power f^(p-1), tracking only exponents that can still cancel to
    // the constant term within the remaining factors
    const Index steps = static_cast<Index>(prime.convert_to<long>()) - 1;
    std::map<IntVec, Int, LexLess> dist;
    dist[IntVec::Zero(f.dim())] = 1;
    for (Index t = 1; t <= steps; ++t) {
        std::map<IntVec, Int, LexLess> next;
        const Int remaining = steps - t;
        for (const auto& [e, cnt] : dist) {
            for (const auto& [m, c] : f.terms()) {
                IntVec e2 = e + m;
                bool keep = true;
                for (const auto& fc : newton.facets())
                    if (fc.normal.dot(e2) > remaining * fc.offset) {
                        keep = false;
                        break;
                    }
                if (!keep) continue;
                next[e2] += cnt * numerator(c);
            }
        }
        dist = std::move(next);
    }
    auto it = dist.find(IntVec::Zero(f.dim()));
    Int constant = it == dist.end() ? Int(0) : it->second;
    Int r = constant % prime;
    if (r < 0) r += prime;
    return r;
}

} // namespace reflex
