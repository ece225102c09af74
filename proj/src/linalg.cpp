#include "reflex/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace reflex {

namespace {

// g = gcd(a,b) = x*a + y*b
Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, xx = 0;
    Int old_y = 0, yy = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x; y = old_y;
    return old_r;
}

} // namespace

HnfResult hnf(const IntMat& m) {
    const Index rows = m.rows(), cols = m.cols();
    IntMat h = m;
    IntMat u = IntMat::Zero(rows, rows);
    for (Index i = 0; i < rows; ++i) u(i, i) = 1;

    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (h(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) { h.row(r).swap(h.row(piv)); u.row(r).swap(u.row(piv)); }

        for (Index i = r + 1; i < rows; ++i) {
            if (h(i, c) == 0) continue;
            Int x, y;
            Int g = xgcd(h(r, c), h(i, c), x, y);
            Int ar = h(r, c) / g, ai = h(i, c) / g;
            // [[x, y], [-ai, ar]] has determinant 1
            for (Index k = 0; k < cols; ++k) {
                Int hr = h(r, k), hi = h(i, k);
                h(r, k) = x * hr + y * hi;
                h(i, k) = -ai * hr + ar * hi;
            }
            for (Index k = 0; k < rows; ++k) {
                Int ur = u(r, k), ui = u(i, k);
                u(r, k) = x * ur + y * ui;
                u(i, k) = -ai * ur + ar * ui;
            }
        }
        if (h(r, c) < 0) { h.row(r) = -h.row(r); u.row(r) = -u.row(r); }
        for (Index i = 0; i < r; ++i) {
            if (h(i, c) == 0) continue;
            Int q = floorDiv(h(i, c), h(r, c));
            if (q != 0) {
                h.row(i) -= q * h.row(r);
                u.row(i) -= q * u.row(r);
            }
        }
        ++r;
    }
    return HnfResult{std::move(h), std::move(u)};
}

IntMat hnfOf(const IntMat& m) { return hnf(m).h; }

IntMat hnfBasis(const IntMat& m) {
    IntMat h = hnfOf(m);
    Index r = 0;
    for (Index i = 0; i < h.rows(); ++i)
        if (!h.row(i).isZero()) ++r;
    if (r < h.cols())
        throw PreconditionError("matrix rows span a rank-" + std::to_string(r) +
                                " sublattice of Z^" + std::to_string(h.cols()));
    return h.topRows(h.cols());
}

std::vector<Int> snf(IntMat m) {
    const Index rows = m.rows(), cols = m.cols();
    const Index t_max = std::min(rows, cols);
    std::vector<Int> d(static_cast<size_t>(t_max), Int(0));

    for (Index t = 0; t < t_max; ++t) {
        // move a nonzero entry of minimal magnitude to (t,t)
        auto pick = [&]() -> bool {
            Index bi = -1, bj = -1;
            Int best = 0;
            for (Index i = t; i < rows; ++i)
                for (Index j = t; j < cols; ++j) {
                    if (m(i, j) == 0) continue;
                    Int a = abs(m(i, j));
                    if (bi < 0 || a < best) { best = a; bi = i; bj = j; }
                }
            if (bi < 0) return false;
            if (bi != t) m.row(t).swap(m.row(bi));
            if (bj != t) m.col(t).swap(m.col(bj));
            return true;
        };
        if (!pick()) break;

        for (;;) {
            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Int q = m(i, t) / m(t, t);
                m.row(i) -= q * m.row(t);
                if (m(i, t) != 0) { m.row(t).swap(m.row(i)); clean = false; }
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Int q = m(t, j) / m(t, t);
                m.col(j) -= q * m.col(t);
                if (m(t, j) != 0) { m.col(t).swap(m.col(j)); clean = false; }
            }
            if (!clean) continue;

            // enforce divisibility of the remaining block by m(t,t)
            bool fixed = true;
            for (Index i = t + 1; i < rows && fixed; ++i)
                for (Index j = t + 1; j < cols && fixed; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        m.row(t) += m.row(i);
                        fixed = false;
                    }
            if (fixed) break;
        }
        d[static_cast<size_t>(t)] = abs(m(t, t));
    }

    // normalize the divisibility chain among nonzero factors
    for (bool stable = false; !stable;) {
        stable = true;
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i] == 0 || d[i + 1] == 0) continue;
            if (d[i + 1] % d[i] != 0) {
                Int g = boost::multiprecision::gcd(d[i], d[i + 1]);
                Int l = d[i] / g * d[i + 1];
                d[i] = g;
                d[i + 1] = l;
                stable = false;
            }
        }
    }
    return d;
}

IntMat kernelRows(const IntMat& a) {
    const Index mrows = a.rows(), n = a.cols();
    IntMat b(n, mrows + n);
    b.leftCols(mrows) = a.transpose();
    b.rightCols(n).setZero();
    for (Index i = 0; i < n; ++i) b(i, mrows + i) = 1;
    IntMat h = hnfOf(b);
    std::vector<Index> keep;
    for (Index i = 0; i < n; ++i)
        if (h.row(i).head(mrows).isZero()) keep.push_back(i);
    IntMat k(static_cast<Index>(keep.size()), n);
    for (Index i = 0; i < k.rows(); ++i) k.row(i) = h.row(keep[static_cast<size_t>(i)]).tail(n);
    return k;
}

std::optional<RatMat> solveRational(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows())
        throw PreconditionError("solve_rational: incompatible shapes");
    const Index rows = a.rows(), n = a.cols(), rhs = b.cols();
    RatMat w(rows, n + rhs);
    w.leftCols(n) = a;
    w.rightCols(rhs) = b;

    std::vector<Index> pivotCol;
    Index r = 0;
    for (Index c = 0; c < n && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (w(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) w.row(r).swap(w.row(piv));
        w.row(r) /= w(r, c);
        for (Index i = 0; i < rows; ++i) {
            if (i == r || w(i, c) == 0) continue;
            w.row(i) -= w(i, c) * w.row(r);
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (Index i = r; i < rows; ++i)
        if (!w.row(i).tail(rhs).isZero()) return std::nullopt;

    RatMat x = RatMat::Zero(n, rhs);
    for (Index i = 0; i < r; ++i) x.row(pivotCol[static_cast<size_t>(i)]) = w.row(i).tail(rhs);
    return x;
}

// ---------------------------------------------------------------------------
// modular arithmetic, prime sampling

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

bool isPrime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

u64 modOf(const Int& x, u64 p) {
    Int r = x % Int(p);
    if (r < 0) r += p;
    return r.convert_to<u64>();
}

} // namespace

std::uint64_t primeFromSeed(std::uint64_t seed) {
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
    const u64 lo = (1ULL << 60) + 1, hi = (1ULL << 62) - 1;
    for (;;) {
        u64 x = lo + gen() % (hi - lo);
        x |= 1;
        if (isPrime(x)) return x;
    }
}

RankMode RankMode::Modular(std::uint64_t seed) {
    return RankMode{false, primeFromSeed(seed), seed};
}

RankMode RankMode::ModularWithPrime(std::uint64_t prime, std::uint64_t seed) {
    return RankMode{false, prime, seed};
}

// ---------------------------------------------------------------------------
// RankEngine

namespace {

// Sorted sparse vector ops over a field-like value type.
template <typename V>
using SVec = std::vector<std::pair<std::int64_t, V>>;

// r = a*x + b*y, merged by index, zeros dropped
template <typename V, typename Ops>
SVec<V> axpy(const V& a, const SVec<V>& x, const V& b, const SVec<V>& y, const Ops& ops) {
    SVec<V> r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            V v = ops.mul(a, x[i].second);
            if (!ops.isZero(v)) r.emplace_back(x[i].first, std::move(v));
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            V v = ops.mul(b, y[j].second);
            if (!ops.isZero(v)) r.emplace_back(y[j].first, std::move(v));
            ++j;
        } else {
            V v = ops.add(ops.mul(a, x[i].second), ops.mul(b, y[j].second));
            if (!ops.isZero(v)) r.emplace_back(x[i].first, std::move(v));
            ++i; ++j;
        }
    }
    return r;
}

struct IntOps {
    using Value = Int;
    Int add(const Int& a, const Int& b) const { return a + b; }
    Int mul(const Int& a, const Int& b) const { return a * b; }
    Int neg(const Int& a) const { return -a; }
    bool isZero(const Int& a) const { return a == 0; }
    Int one() const { return 1; }
    // weighted union-find needs exact ratios
    using Weight = Rat;
    Rat wOne() const { return 1; }
    Rat wMul(const Rat& a, const Rat& b) const { return a * b; }
    Rat wDivNeg(const Int& num, const Int& den) const { return -Rat(num) / Rat(den); }
    Int wApplyNum(const Rat& w, const Int& v) const { return numerator(w) * v; }
    Int wApplyDen(const Rat& w) const { return denominator(w); }
    bool wIsZeroComb(const Int& a, const Rat& w1, const Int& b, const Rat& w2) const {
        return Rat(a) * w1 + Rat(b) * w2 == 0;
    }
    void normalize(SVec<Int>& v) const {
        if (v.empty()) return;
        Int g = 0;
        for (auto& [i, val] : v) {
            g = boost::multiprecision::gcd(g, val);
            if (g == 1) break;
        }
        if (v[0].second < 0) g = -g;
        if (g != 1)
            for (auto& [i, val] : v) val /= g;
    }
};

struct ZpOps {
    u64 p;
    using Value = u64;
    u64 add(u64 a, u64 b) const { u64 r = a + b; return r >= p ? r - p : r; }
    u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    bool isZero(u64 a) const { return a == 0; }
    u64 one() const { return 1; }
    using Weight = u64;
    u64 wOne() const { return 1; }
    u64 wMul(u64 a, u64 b) const { return mulmod(a, b, p); }
    u64 wDivNeg(u64 num, u64 den) const { return neg(mulmod(num, invmod(den, p), p)); }
    u64 wApplyNum(u64 w, u64 v) const { return mulmod(w, v, p); }
    u64 wApplyDen(u64) const { return 1; }
    bool wIsZeroComb(u64 a, u64 w1, u64 b, u64 w2) const {
        return add(mulmod(a, w1, p), mulmod(b, w2, p)) == 0;
    }
    void normalize(SVec<u64>&) const {}
};

template <typename Ops>
class Engine {
public:
    explicit Engine(Ops ops) : ops_(std::move(ops)) {}

    bool addColumn(const SVec<typename Ops::Value>& raw) {
        auto v = substitute(raw);
        if (ufOpen_ && v.size() <= 2) return feedUnionFind(v);
        ufOpen_ = false;
        return eliminate(std::move(v));
    }

    Index rank() const { return rank_; }

    bool isFree(std::int64_t r) const {
        auto [root, w] = find(r);
        (void)w;
        if (root != r) return false;
        if (dead_.count(root)) return false;
        return pivots_.find(root) == pivots_.end();
    }

    SVec<typename Ops::Value> reduce(const SVec<typename Ops::Value>& raw) const {
        auto v = substitute(raw);
        // pivots have minimal index at their lead, so one left-to-right sweep
        for (size_t i = 0; i < v.size();) {
            auto it = pivots_.find(v[i].first);
            if (it == pivots_.end()) { ++i; continue; }
            v = axpy(it->second[0].second, v, ops_.neg(v[i].second), it->second, ops_);
        }
        return v;
    }

private:
    using V = typename Ops::Value;
    using W = typename Ops::Weight;

    // x_r = weight * x_parent; dead roots are forced to zero
    mutable std::unordered_map<std::int64_t, std::pair<std::int64_t, W>> parent_;
    std::unordered_set<std::int64_t> dead_;
    std::map<std::int64_t, SVec<V>> pivots_;
    Ops ops_;
    Index rank_ = 0;
    bool ufOpen_ = true;

    std::pair<std::int64_t, W> find(std::int64_t r) const {
        std::vector<std::int64_t> path;
        std::int64_t cur = r;
        for (;;) {
            auto it = parent_.find(cur);
            if (it == parent_.end()) break;
            path.push_back(cur);
            cur = it->second.first;
        }
        // path compression: re-point every node on the path at the root
        W acc = ops_.wOne();
        for (auto pit = path.rbegin(); pit != path.rend(); ++pit) {
            auto& link = parent_.at(*pit);
            acc = ops_.wMul(link.second, acc);
            link = {cur, acc};
        }
        if (path.empty()) return {cur, ops_.wOne()};
        return {cur, parent_.at(r).second};
    }

    bool feedUnionFind(const SVec<V>& v) {
        if (v.empty()) return false;
        if (v.size() == 1) {
            auto [root, w] = find(v[0].first);
            (void)w;
            if (dead_.count(root)) return false;
            dead_.insert(root);
            ++rank_;
            return true;
        }
        auto [r1, w1] = find(v[0].first);
        auto [r2, w2] = find(v[1].first);
        const V& a = v[0].second;
        const V& b = v[1].second;
        bool d1 = dead_.count(r1) != 0, d2 = dead_.count(r2) != 0;
        if (d1 && d2) return false;
        if (d1 || d2) {
            dead_.insert(d1 ? r2 : r1);
            ++rank_;
            return true;
        }
        if (r1 == r2) {
            if (ops_.wIsZeroComb(a, w1, b, w2)) return false;
            dead_.insert(r1);
            ++rank_;
            return true;
        }
        // a*w1*x_{r1} + b*w2*x_{r2} = 0  =>  x_{r1} = -(b*w2)/(a*w1) * x_{r2}
        parent_[r1] = {r2, weightRatio(a, w1, b, w2)};
        ++rank_;
        return true;
    }

    W weightRatio(const V& a, const W& w1, const V& b, const W& w2) const;

    // rewrite a vector over union-find roots
    SVec<V> substitute(const SVec<V>& v) const {
        if (parent_.empty() && dead_.empty()) return v;
        std::map<std::int64_t, std::pair<V, V>> acc; // root -> (numerator sum, denominator)
        bool plain = true;
        for (const auto& [idx, val] : v) {
            auto [root, w] = find(idx);
            if (dead_.count(root)) { plain = false; continue; }
            V num = ops_.wApplyNum(w, val);
            V den = ops_.wApplyDen(w);
            auto it = acc.find(root);
            if (it == acc.end()) {
                acc.emplace(root, std::make_pair(std::move(num), std::move(den)));
            } else {
                // n1/d1 + n2/d2 = (n1 d2 + n2 d1)/(d1 d2)
                it->second.first = ops_.add(ops_.mul(it->second.first, den),
                                            ops_.mul(num, it->second.second));
                it->second.second = ops_.mul(it->second.second, den);
            }
            if (root != idx) plain = false;
        }
        if (plain && acc.size() == v.size()) return v;
        // clear denominators: multiply through by the product of the others
        SVec<V> out;
        out.reserve(acc.size());
        std::vector<V> dens;
        for (auto& [root, nd] : acc) dens.push_back(nd.second);
        size_t k = 0;
        for (auto& [root, nd] : acc) {
            V scale = ops_.one();
            for (size_t j = 0; j < dens.size(); ++j)
                if (j != k) scale = ops_.mul(scale, dens[j]);
            V val = ops_.mul(nd.first, scale);
            if (!ops_.isZero(val)) out.emplace_back(root, std::move(val));
            ++k;
        }
        return out;
    }

    bool eliminate(SVec<V> v) {
        while (!v.empty()) {
            auto it = pivots_.find(v[0].first);
            if (it == pivots_.end()) {
                ops_.normalize(v);
                pivots_.emplace(v[0].first, std::move(v));
                ++rank_;
                return true;
            }
            v = axpy(it->second[0].second, v, ops_.neg(v[0].second), it->second, ops_);
            ops_.normalize(v);
        }
        return false;
    }
};

template <>
Rat Engine<IntOps>::weightRatio(const Int& a, const Rat& w1, const Int& b, const Rat& w2) const {
    return -(Rat(b) * w2) / (Rat(a) * w1);
}

template <>
u64 Engine<ZpOps>::weightRatio(const u64& a, const u64& w1, const u64& b, const u64& w2) const {
    return ops_.wDivNeg(ops_.mul(b, w2), ops_.mul(a, w1));
}

} // namespace

struct RankEngine::Impl {
    std::optional<Engine<IntOps>> exact;
    std::optional<Engine<ZpOps>> modular;
    u64 prime = 0;

    SVec<u64> toMod(const SparseIntCol& col) const {
        SVec<u64> v;
        v.reserve(col.size());
        for (const auto& [i, x] : col) {
            u64 r = modOf(x, prime);
            if (r != 0) v.emplace_back(i, r);
        }
        return v;
    }
};

RankEngine::RankEngine() : impl_(new Impl) { impl_->exact.emplace(IntOps{}); }

RankEngine::RankEngine(std::uint64_t prime) : impl_(new Impl) {
    impl_->prime = prime;
    impl_->modular.emplace(ZpOps{prime});
}

RankEngine::~RankEngine() = default;
RankEngine::RankEngine(RankEngine&&) noexcept = default;
RankEngine& RankEngine::operator=(RankEngine&&) noexcept = default;

bool RankEngine::addColumn(const SparseIntCol& col) {
    if (impl_->exact) return impl_->exact->addColumn(col);
    return impl_->modular->addColumn(impl_->toMod(col));
}

Index RankEngine::rank() const {
    return impl_->exact ? impl_->exact->rank() : impl_->modular->rank();
}

bool RankEngine::isFree(std::int64_t idx) const {
    return impl_->exact ? impl_->exact->isFree(idx) : impl_->modular->isFree(idx);
}

SparseIntCol RankEngine::reduce(const SparseIntCol& col) const {
    if (impl_->exact) return impl_->exact->reduce(col);
    auto r = impl_->modular->reduce(impl_->toMod(col));
    SparseIntCol out;
    out.reserve(r.size());
    for (auto& [i, v] : r) out.emplace_back(i, Int(v));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<SparseIntCol> integerColumns(const RatMat& a) {
    std::vector<SparseIntCol> cols;
    cols.reserve(static_cast<size_t>(a.cols()));
    for (Index j = 0; j < a.cols(); ++j) {
        Int den = 1;
        for (Index i = 0; i < a.rows(); ++i)
            den = boost::multiprecision::lcm(den, denominator(a(i, j)));
        SparseIntCol c;
        for (Index i = 0; i < a.rows(); ++i) {
            if (a(i, j) == 0) continue;
            Rat scaled = a(i, j) * Rat(den);
            c.emplace_back(i, numerator(scaled));
        }
        cols.push_back(std::move(c));
    }
    return cols;
}

Index rankOfColumns(std::vector<SparseIntCol> cols, const RankMode& mode) {
    std::stable_sort(cols.begin(), cols.end(),
                     [](const SparseIntCol& a, const SparseIntCol& b) { return a.size() < b.size(); });
    RankEngine engine = mode.exact ? RankEngine() : RankEngine(mode.prime);
    for (const auto& c : cols) engine.addColumn(c);
    return engine.rank();
}

} // namespace

Index rank(const RatMat& a, const RankMode& mode) {
    if (!mode.exact && mode.prime <= (1ULL << 60))
        throw PreconditionError("modular rank requires a prime > 2^60");
    return rankOfColumns(integerColumns(a), mode);
}

Index rank(const IntMat& a, const RankMode& mode) {
    if (!mode.exact && mode.prime <= (1ULL << 60))
        throw PreconditionError("modular rank requires a prime > 2^60");
    std::vector<SparseIntCol> cols(static_cast<size_t>(a.cols()));
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != 0) cols[static_cast<size_t>(j)].emplace_back(i, a(i, j));
    return rankOfColumns(std::move(cols), mode);
}

} // namespace reflex
