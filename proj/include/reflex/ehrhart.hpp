#pragma once

#include "reflex/polytope.hpp"
#include "reflex/types.hpp"

#include <vector>

namespace reflex {

/// Ehrhart polynomial of a full-dimensional lattice polytope: the polynomial
/// with Lambda(k) = l(k*p) for every integer k >= 0; constant term 1 and
/// leading coefficient d(p)/n!.
struct EhrhartPolynomial {
    Index degree = 0;
    std::vector<Rat> coeffs; ///< constant term first

    Rat eval(const Int& k) const;
};

/// psi_0..psi_n of (1-t)^{n+1} * sum l(k p) t^k, with phi_i = psi_{n+1-i}.
/// psi_0 = 1, psi_1 = l - n - 1, sum psi_i = d(p).
struct DeltaVector {
    std::vector<Int> psi; ///< indices 0..n
    std::vector<Int> phi; ///< indices 0..n+1, phi_i = psi_{n+1-i}

    Int sum() const;
    bool symmetric() const; ///< psi_i == psi_{n-i} for all i
};

/// Number of lattice points of k*p (k >= 0); l(0p) = 1 by convention.
Int countScaled(const LatticePolytope& p, const Int& k);
/// Interior lattice points of k*p (k >= 1).
Int countScaledInterior(const LatticePolytope& p, const Int& k);

EhrhartPolynomial ehrhart(const LatticePolytope& p);

/// Throws InternalConsistencyError if the degree-(n+1) series coefficient is
/// nonzero or some psi_i is negative (both impossible for lattice polytopes).
DeltaVector deltaVector(const LatticePolytope& p);

struct ReciprocityRow {
    Int k;
    Int lambdaAtMinusK; ///< (-1)^n Lambda(-k)
    Int interiorCount;  ///< l*(k p), counted directly
    bool ok = false;
};

struct ReciprocityReport {
    std::vector<ReciprocityRow> rows;
    bool allOk = true;
};

/// Ehrhart reciprocity (-1)^n Lambda(-k) = l*(k p) for k = 1..kMax.
ReciprocityReport checkReciprocity(const LatticePolytope& p, const Int& kMax);

} // namespace reflex
