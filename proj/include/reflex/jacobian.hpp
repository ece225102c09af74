#pragma once

#include "reflex/ehrhart.hpp"
#include "reflex/laurent.hpp"
#include "reflex/linalg.hpp"
#include "reflex/polytope.hpp"

#include <vector>

namespace reflex {

/// Monomial basis of the degree-k slice of the cone ring S: the lattice
/// points of k*p in lexicographic order (degree 0 is the single monomial 1).
struct GradedSlice {
    Index k = 0;
    std::vector<IntVec> points;

    Index size() const { return static_cast<Index>(points.size()); }
    Index indexOf(const IntVec& m) const; ///< -1 if absent
};

GradedSlice slice(const LatticePolytope& p, Index k);

/// One section F_j as a sparse vector over the degree-1 slice.
struct Section {
    std::vector<std::pair<IntVec, Rat>> coeffs; ///< sorted by exponent
};

/// F_0 = X_0 f and F_i = X_0 X_i df/dX_i as vectors over slice(p, 1).
/// Requires the Newton polytope of f to equal p: support inside p and every
/// vertex of p carrying a nonzero coefficient (missing vertices are named).
std::vector<Section> derivativeSections(const LatticePolytope& p, const LaurentPolynomial& f);

struct JacobianReport {
    bool regular = false;
    std::vector<Int> dimsR; ///< dim R^k for k = 0..n+1
    std::vector<Int> psi;
    bool exactMode = true;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
};

/// Graded dimensions of the Jacobian ring R = S/(F_0..F_n); regular iff they
/// equal the delta vector through degree n and vanish in degree n+1.
JacobianReport jacobianDims(const LatticePolytope& p, const LaurentPolynomial& f,
                            const RankMode& mode = RankMode::Exact());

struct IdealFiltrationReport {
    std::vector<Int> dimsH; ///< image of the interior-monomial ideal in R^k, k = 0..n+1
    /// chain[i-1][k] = image of I^(i) in R^k, i = 1..n
    std::vector<std::vector<Int>> chain;
    bool symmetric = false; ///< dim H^i == dim H^{n+1-i} for 1 <= i <= n
};

/// Requires a regular f.
IdealFiltrationReport idealFiltrationDims(const LatticePolytope& p, const LaurentPolynomial& f,
                                          const RankMode& mode = RankMode::Exact());

struct DualizingReport {
    std::vector<Int> dimsD; ///< k = 0..n+1
    std::vector<Int> phi;
};

/// dim D^k = l*(k p) - rank of (F_0..F_n) I^(1),k-1 inside I^(1),k; checked
/// against phi and raising InternalConsistencyError on mismatch (a regularity
/// misdetection). Requires a regular f.
DualizingReport dualizingDims(const LatticePolytope& p, const LaurentPolynomial& f,
                              const RankMode& mode = RankMode::Exact());

struct GorensteinReport {
    bool ok = false;
    std::vector<Int> dims; ///< dim R^i for i = 0..n
    /// pairingRanks[i] = rank of R^i x R^{n-i} -> R^n
    std::vector<Index> pairingRanks;
};

/// Perfectness of the multiplication pairing R^i x R^{n-i} -> R^n for a
/// reflexive polytope and regular f (dim R^n must be 1).
GorensteinReport gorensteinPairingCheck(const LatticePolytope& p, const LaurentPolynomial& f,
                                        const RankMode& mode = RankMode::Exact());

} // namespace reflex
