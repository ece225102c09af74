#pragma once

#include "reflex/laurent.hpp"
#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <optional>
#include <vector>

namespace reflex {

/// Constant-term period series of the family  a_0 - sum_{m in boundary} X^m:
/// B_i counts, with multinomial weight, the length-i words over the boundary
/// lattice points summing to zero. B_0 = 1.
struct PeriodSeries {
    std::vector<Int> coeffs; ///< B_0..B_kmax
    std::vector<IntVec> boundaryPoints;

    /// gcd of the indices of the nonzero coefficients past B_0 (0 if none).
    Index compressionStep() const;
    /// the subsequence B_0, B_g, B_2g, ... on the compression step g
    std::vector<Int> compressed() const;
};

/// Requires a reflexive polytope (the parameter sits at the unique interior
/// point). Exact sparse convolution with hull-based pruning.
PeriodSeries pi0(const LatticePolytope& p, Index kmax);

/// P-recursive relation sum_{j=0}^order poly_j(i) * c_{i-j} = 0.
struct Recurrence {
    Index order = 0;
    Index degree = 0;
    std::vector<std::vector<Int>> polys; ///< polys[j][t] = coefficient of i^t in p_j

    Rat apply(const std::vector<Int>& c, Index i) const; ///< lhs at index i
    bool annihilates(const std::vector<Int>& c, Index from, Index to) const;
};

/// Minimal (order, then degree) recurrence fitted on a training window and
/// validated on a held-out suffix of at least `holdout` terms; nullopt when
/// none exists within the bounds. Coefficients are normalized to integer
/// content 1 with a positive leading coefficient of p_0.
std::optional<Recurrence> fitRecurrence(const std::vector<Int>& series, Index maxOrder,
                                        Index maxDegree, Index holdout = 5);

/// Constant coefficient of f^(p-1) reduced mod p, for integer-coefficient f
/// whose Newton polytope is reflexive. Zero iff the Hasse invariant vanishes.
Int hasseConstantTerm(const LaurentPolynomial& f, const Int& prime, const Int& maxPrime = Int(64));

} // namespace reflex
