#include "reflex/lattice_points.hpp"

#include "reflex/linalg.hpp"

#include <algorithm>
#include <cstdint>

namespace reflex {

namespace {

void primitivize(IntVec& v) {
    Int g = 0;
    for (Index i = 0; i < v.size(); ++i) {
        g = boost::multiprecision::gcd(g, v[i]);
        if (g == 1) return;
    }
    if (g > 1)
        for (Index i = 0; i < v.size(); ++i) v[i] /= g;
}

} // namespace

std::vector<IntVec> latticePointsIn(const std::vector<HalfSpace>& halfSpaces, const Box& box,
                                    bool strict) {
    const Index n = box.lo.size();
    for (const auto& hs : halfSpaces)
        if (hs.normal.size() != n)
            throw PreconditionError("half-space dimension mismatch");
    for (Index i = 0; i < n; ++i)
        if (box.lo[i] > box.hi[i]) return {};

    const size_t m = halfSpaces.size();
    // suffix bounds: tightest achievable contribution of coordinates >= k
    std::vector<std::vector<Int>> sufMax(m, std::vector<Int>(static_cast<size_t>(n) + 1, Int(0)));
    for (size_t j = 0; j < m; ++j) {
        for (Index k = n - 1; k >= 0; --k) {
            const Int& c = halfSpaces[j].normal[k];
            Int hiContrib = c >= 0 ? c * box.hi[k] : c * box.lo[k];
            sufMax[j][static_cast<size_t>(k)] = sufMax[j][static_cast<size_t>(k) + 1] + hiContrib;
        }
    }

    std::vector<IntVec> out;
    IntVec x(n);
    std::vector<Int> partial(m, Int(0)); // running <x, normal> over fixed prefix

    // depth-first over coordinates in lexicographic order
    auto rec = [&](auto&& self, Index k) -> void {
        if (k == n) {
            for (size_t j = 0; j < m; ++j) {
                if (strict ? partial[j] <= -halfSpaces[j].offset
                           : partial[j] < -halfSpaces[j].offset)
                    return;
            }
            out.push_back(x);
            return;
        }
        for (Int v = box.lo[k]; v <= box.hi[k]; ++v) {
            x[k] = v;
            bool feasible = true;
            for (size_t j = 0; j < m; ++j) {
                Int reach = partial[j] + halfSpaces[j].normal[k] * v +
                            sufMax[j][static_cast<size_t>(k) + 1];
                if (strict ? reach <= -halfSpaces[j].offset : reach < -halfSpaces[j].offset) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (size_t j = 0; j < m; ++j) partial[j] += halfSpaces[j].normal[k] * v;
            self(self, k + 1);
            for (size_t j = 0; j < m; ++j) partial[j] -= halfSpaces[j].normal[k] * v;
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<IntVec> latticePointsInChecked(const std::vector<HalfSpace>& halfSpaces,
                                           const Box& box) {
    const Index n = box.lo.size();
    IntMat a(static_cast<Index>(halfSpaces.size()), n);
    for (Index i = 0; i < a.rows(); ++i) a.row(i) = halfSpaces[static_cast<size_t>(i)].normal;
    if (!coneIsTrivial(a))
        throw PreconditionError("lattice_points_in: inequality system is unbounded");
    return latticePointsIn(halfSpaces, box, false);
}

Int countLatticePoints(const std::vector<HalfSpace>& halfSpaces, const Box& box, bool strict) {
    return Int(latticePointsIn(halfSpaces, box, strict).size());
}

// ---------------------------------------------------------------------------
// double description for cones { x : a x >= 0 }

namespace {

using Bits = std::vector<std::uint64_t>;

Bits bitsAnd(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

bool bitsSubset(const Bits& sub, const Bits& sup) {
    for (size_t i = 0; i < sub.size(); ++i)
        if ((sub[i] & ~sup[i]) != 0) return false;
    return true;
}

struct Ray {
    IntVec dir;
    Bits tight;
};

} // namespace

std::vector<IntVec> coneExtremeRays(const IntMat& aIn) {
    const Index n = aIn.cols();
    std::vector<Index> rows;
    for (Index i = 0; i < aIn.rows(); ++i)
        if (!aIn.row(i).isZero()) rows.push_back(i);
    IntMat a(static_cast<Index>(rows.size()), n);
    for (Index i = 0; i < a.rows(); ++i) a.row(i) = aIn.row(rows[static_cast<size_t>(i)]);

    if (kernelRows(a).rows() > 0)
        throw PreconditionError("coneExtremeRays: cone is not pointed");

    // initial invertible row set
    std::vector<Index> init;
    {
        RatMat acc(0, n);
        for (Index i = 0; i < a.rows() && acc.rows() < n; ++i) {
            RatMat cand(acc.rows() + 1, n);
            cand.topRows(acc.rows()) = acc;
            for (Index j = 0; j < n; ++j) cand(acc.rows(), j) = Rat(a(i, j));
            if (rank(cand) == cand.rows()) {
                acc = cand;
                init.push_back(i);
            }
        }
    }

    IntMat b(n, n);
    for (Index i = 0; i < n; ++i) b.row(i) = a.row(init[static_cast<size_t>(i)]);
    RatMat id = RatMat::Zero(n, n);
    for (Index i = 0; i < n; ++i) id(i, i) = 1;
    RatMat binvCols(n, n);
    {
        RatMat br(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) br(i, j) = Rat(b(i, j));
        auto sol = solveRational(br, id);
        binvCols = *sol; // b has full rank by construction
    }

    const size_t words = (static_cast<size_t>(a.rows()) + 63) / 64;
    auto evalTight = [&](const IntVec& dir, const std::vector<bool>& processed) {
        Bits t(words, 0);
        for (Index i = 0; i < a.rows(); ++i) {
            if (!processed[static_cast<size_t>(i)]) continue;
            if (a.row(i).dot(dir) == 0)
                t[static_cast<size_t>(i) / 64] |= (1ULL << (static_cast<size_t>(i) % 64));
        }
        return t;
    };

    std::vector<bool> processed(static_cast<size_t>(a.rows()), false);
    for (Index i : init) processed[static_cast<size_t>(i)] = true;

    std::vector<Ray> rays;
    for (Index j = 0; j < n; ++j) {
        // column j of b^{-1} scaled to a primitive integer vector
        Int den = 1;
        for (Index i = 0; i < n; ++i)
            den = boost::multiprecision::lcm(den, denominator(binvCols(i, j)));
        IntVec dir(n);
        for (Index i = 0; i < n; ++i) dir[i] = numerator(binvCols(i, j) * Rat(den));
        primitivize(dir);
        rays.push_back(Ray{dir, evalTight(dir, processed)});
    }

    for (Index row = 0; row < a.rows(); ++row) {
        if (processed[static_cast<size_t>(row)]) continue;
        std::vector<Ray> pos, zero, neg;
        for (auto& r : rays) {
            Int v = a.row(row).dot(r.dir);
            if (v > 0) pos.push_back(std::move(r));
            else if (v == 0) zero.push_back(std::move(r));
            else neg.push_back(std::move(r));
        }
        processed[static_cast<size_t>(row)] = true;
        const std::uint64_t rowBit = 1ULL << (static_cast<size_t>(row) % 64);
        const size_t rowWord = static_cast<size_t>(row) / 64;
        for (auto& r : zero) r.tight[rowWord] |= rowBit;

        // adjacency test against the generation before this row was added
        auto adjacent = [&](const Ray& rp, const Ray& rn) {
            Bits common = bitsAnd(rp.tight, rn.tight);
            common[rowWord] &= ~rowBit;
            auto covers = [&](const Ray& cand) {
                return &cand != &rp && &cand != &rn && bitsSubset(common, cand.tight);
            };
            for (const auto& c : pos)
                if (covers(c)) return false;
            for (const auto& c : zero)
                if (covers(c)) return false;
            for (const auto& c : neg)
                if (covers(c)) return false;
            return true;
        };

        std::vector<Ray> born;
        for (const auto& rp : pos) {
            Int vp = a.row(row).dot(rp.dir);
            for (const auto& rn : neg) {
                if (!adjacent(rp, rn)) continue;
                Int vn = a.row(row).dot(rn.dir);
                IntVec dir = vp * rn.dir - vn * rp.dir;
                primitivize(dir);
                Bits t = bitsAnd(rp.tight, rn.tight);
                t[rowWord] |= rowBit;
                born.push_back(Ray{std::move(dir), std::move(t)});
            }
        }
        std::vector<Ray> next = std::move(pos);
        for (auto& r : zero) next.push_back(std::move(r));
        for (auto& r : born) next.push_back(std::move(r));
        rays = std::move(next);
    }

    std::vector<IntVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.dir));
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

bool coneIsTrivial(const IntMat& a) {
    if (a.cols() == 0) return true;
    if (kernelRows(a).rows() > 0) return false;
    return coneExtremeRays(a).empty();
}

} // namespace reflex
