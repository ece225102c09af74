#pragma once

#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <map>

namespace reflex {

/// Sparse Laurent polynomial: exponent vector -> nonzero rational coefficient.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(Index dim) : dim_(dim) {}

    Index dim() const { return dim_; }

    void setCoefficient(const IntVec& exponent, const Rat& c);
    Rat coefficient(const IntVec& exponent) const;
    const std::map<IntVec, Rat, LexLess>& terms() const { return terms_; }
    Index termCount() const { return static_cast<Index>(terms_.size()); }

    /// Convex hull of the support. Throws if the support is not
    /// full-dimensional.
    LatticePolytope newtonPolytope() const;

    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial& operator*=(const Rat& c);

    /// Exponent translation f(X) -> X^t f(X).
    LaurentPolynomial translated(const IntVec& t) const;

private:
    Index dim_;
    std::map<IntVec, Rat, LexLess> terms_;
};

} // namespace reflex
