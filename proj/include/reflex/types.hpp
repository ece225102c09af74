#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflex {

/// Exact arbitrary-precision integers and rationals. All core math runs on
/// these scalars; fixed-width arithmetic never touches lattice data.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using Index = Eigen::Index;

/// Dense Eigen types over the exact scalars.
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/// A stated precondition of an operation does not hold for the given input.
/// The CLI maps this to exit code 2.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent routes to the same quantity disagree (e.g. facet offsets
/// vs. delta-vector symmetry). Always a bug or a corrupted input; the CLI
/// maps this to exit code 1.
class InternalConsistencyError : public std::runtime_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

inline Int floorDiv(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Rat ratOf(const Int& num, const Int& den) { return Rat(num) / Rat(den); }

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool isInteger(const Rat& q) { return denominator(q) == 1; }

inline bool lexLess(const IntVec& a, const IntVec& b) {
    for (Index i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

struct LexLess {
    bool operator()(const IntVec& a, const IntVec& b) const { return lexLess(a, b); }
};

inline IntVec intVec(std::initializer_list<long> xs) {
    IntVec v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (long x : xs) v[i++] = x;
    return v;
}

inline IntMat intMat(Index rows, Index cols, std::initializer_list<long> xs) {
    IntMat m(rows, cols);
    Index i = 0;
    for (long x : xs) {
        m(i / cols, i % cols) = x;
        ++i;
    }
    return m;
}

/// gcd of all entries, nonnegative; 0 for an all-zero range.
template <typename Range>
Int contentOf(const Range& xs) {
    Int g = 0;
    for (const auto& x : xs) {
        g = boost::multiprecision::gcd(g, Int(x));
        if (g == 1) break;
    }
    return g;
}

inline std::string toString(const Int& x) { return x.str(); }
inline std::string toString(const Rat& q) {
    if (isInteger(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace reflex
