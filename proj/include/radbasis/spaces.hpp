#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radbasis/coeffvec.hpp"

namespace radbasis {

enum class SpaceKind { SupC0, Lp, BlockXp };

/// Which norm governs a CoeffVec: the sup norm of c_0, the l^p norm, or the
/// block space X^p built from l^2 blocks B_k = [(k-1)k/2 + 1, k(k+1)/2].
struct SpaceSpec {
  SpaceKind kind;
  double p;  // exponent, meaningful for Lp and BlockXp; >= 1

  static SpaceSpec sup_c0();
  static SpaceSpec lp(double p);
  static SpaceSpec block_xp(double p);

  /// Short text form for file metadata, e.g. "c0", "l^1.5", "X^3".
  std::string label() const;
};

/// Norm of v in the given space. Accumulations are Neumaier-compensated in
/// ascending index order (blocks ascending, entries ascending within a block),
/// so the result does not depend on any parallel work split. A trailing
/// partial block of X^p is normed as a shorter block.
double norm(const CoeffVec& v, const SpaceSpec& space);

/// Unchecked span form of `norm` for hot loops (entries are positions
/// 1..len in order; caller guarantees finiteness). Bit-identical to `norm`.
double norm_span(std::span<const double> entries, const SpaceSpec& space);

/// Norm of the prefix of the first `len` entries, without copying.
double norm_prefix(const CoeffVec& v, const SpaceSpec& space, std::int64_t len);

struct BlockBounds {
  std::int64_t lo;
  std::int64_t hi;
};

/// Bounds of block B_k = [(k-1)k/2 + 1, k(k+1)/2]; detects index overflow.
BlockBounds block_bounds(std::int64_t k);

/// Index k of the block containing position pos (>= 1).
std::int64_t block_index(std::int64_t pos);

/// Sparse vector as sorted (1-based position, value) pairs with strictly
/// increasing positions. Norm evaluation skips absent (zero) entries, which
/// is an exact no-op for the compensated accumulation, so the result is
/// bit-identical to densifying and calling `norm`.
using SparseEntry = std::pair<std::int64_t, double>;
double sparse_norm(std::span<const SparseEntry> entries, const SpaceSpec& space);

/// The slow-l^p / convergent-X^p witness for 1 < p < 2: entries 2^{-n/p} on
/// block B_{2^n} for n = 1..n_max, zero elsewhere; dim = hi(B_{2^n_max}).
CoeffVec witness_lower(double p, int n_max);

/// The convergent-l^p / divergent-X^p witness for p > 2: the positions of
/// the union of blocks B_{2^n} (n = 1..n_max), taken in increasing order,
/// receive 1/sqrt(j) for the j-th such position.
CoeffVec witness_upper(double p, int n_max);

/// b[phi(k)] = a[k], zero elsewhere; phi strictly increasing, 1-based;
/// result dim = phi(dim(a)).
CoeffVec insert_zeros(const CoeffVec& a, const std::vector<std::int64_t>& phi);

/// Norms of the truncations of seq at each checkpoint (increasing, <= dim).
std::vector<double> partial_sum_norms(const CoeffVec& seq, const SpaceSpec& space,
                                      const std::vector<std::int64_t>& checkpoints);

}  // namespace radbasis
