#pragma once

#include "reflex/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace reflex {

struct HnfResult {
    IntMat h; ///< row-style Hermite normal form, h = u * m
    IntMat u; ///< unimodular transform, |det u| = 1
};

/// Row-style Hermite normal form. Pivot entries are positive, entries above a
/// pivot are reduced into [0, pivot), zero rows sink to the bottom. The form
/// is the canonical representative of the left-GL(n,Z) orbit of m.
HnfResult hnf(const IntMat& m);

/// HNF without the transform.
IntMat hnfOf(const IntMat& m);

/// Basis of the full-rank sublattice spanned by the rows of m, as the square
/// nonzero part of the HNF. Throws PreconditionError if the rows do not span.
IntMat hnfBasis(const IntMat& m);

/// Smith invariant factors d_1 | d_2 | ... of m, length min(rows, cols),
/// nonnegative, with zeros trailing. The cokernel of m (rows as generators)
/// is  Z^cols / rowspace  =  (+) Z/d_i  (+)  Z^(cols - rank).
std::vector<Int> snf(IntMat m);

/// Rows form a basis of { x in Z^n : a x = 0 } for m x n input a. The basis
/// is saturated and in HNF, hence canonical.
IntMat kernelRows(const IntMat& a);

/// Exact solution x of a x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero.
std::optional<RatMat> solveRational(const RatMat& a, const RatMat& b);

/// Rank computation mode. Exact mode runs fraction-free elimination over the
/// integers with per-row content removal; modular mode reduces mod a random
/// 62-bit prime drawn from the seed (a certified lower bound on the exact
/// rank, equal with overwhelming probability).
struct RankMode {
    bool exact = true;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;

    static RankMode Exact() { return RankMode{true, 0, 0}; }
    static RankMode Modular(std::uint64_t seed);
    static RankMode ModularWithPrime(std::uint64_t prime, std::uint64_t seed);
};

/// Deterministic prime in (2^60, 2^62) derived from the seed.
std::uint64_t primeFromSeed(std::uint64_t seed);

Index rank(const RatMat& a, const RankMode& mode = RankMode::Exact());
Index rank(const IntMat& a, const RankMode& mode = RankMode::Exact());

/// One column of a sparse matrix: sorted (row, value) pairs, value != 0.
using SparseIntCol = std::vector<std::pair<std::int64_t, Int>>;

/// Streaming rank engine over a fixed row space. Columns are absorbed one by
/// one; two-term columns go through a weighted union-find over row indices
/// (zero fill), everything else through sparse Gaussian elimination with
/// fraction-free updates. Exact and modular instantiations share the driver.
class RankEngine {
public:
    /// Exact engine.
    RankEngine();
    /// Modular engine over Z/p, p an odd prime < 2^62.
    explicit RankEngine(std::uint64_t prime);
    ~RankEngine();
    RankEngine(RankEngine&&) noexcept;
    RankEngine& operator=(RankEngine&&) noexcept;

    /// Returns true if the column increased the rank.
    bool addColumn(const SparseIntCol& col);
    Index rank() const;

    /// True if e_idx is still a free generator of the quotient by the column
    /// span; the classes of the free indices form a basis of the cokernel.
    bool isFree(std::int64_t idx) const;

    /// Fully reduce a vector against the absorbed columns; the remainder is
    /// supported on free indices and scaled by a nonzero constant.
    SparseIntCol reduce(const SparseIntCol& col) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace reflex
