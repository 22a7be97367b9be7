#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "radbasis/coeffvec.hpp"
#include "radbasis/spaces.hpp"

namespace radbasis {

/// First even number of block B_k (k >= 2; B_1 = {1} has none).
std::int64_t first_even_in_block(std::int64_t k);

/// b_k (k >= 0): the k-th entry of the sequence of first even numbers of the
/// blocks, i.e. the first even number of B_{k+2}. b_0..b_6 = 2,4,8,12,16,22,30.
std::int64_t b_value(std::int64_t k);

/// Whether an even number occurs in the sequence (b_k).
bool is_b_value(std::int64_t even);

/// Permutation of the even numbers 2..2K defined by the three-case rule:
/// odd m fixed, pi(4k+2) = b_k, pi(4k) = the smallest even number that is
/// neither a b-value nor already used. Odd arguments are handled implicitly
/// (`apply` returns them unchanged); the table stores evens only.
class Permutation {
 public:
  std::int64_t K() const { return K_; }

  /// pi(m); m odd returns m, even m must satisfy m <= 2K.
  std::int64_t apply(std::int64_t m) const;

  /// Largest value in the even table (used for basis domain closure).
  std::int64_t max_even_value() const { return max_value_; }

  /// Table value pi(2j) for j = 1..K.
  const std::vector<std::int64_t>& even_values() const { return even_values_; }

 private:
  friend Permutation make_permutation_pi(std::int64_t K);
  std::int64_t K_ = 0;
  std::int64_t max_value_ = 0;
  std::vector<std::int64_t> even_values_;  // [j-1] = pi(2j)
};

Permutation make_permutation_pi(std::int64_t K);

enum class BasisKind { Standard, Summing, Difference, FPrime, FSecond };

/// One of the five bases as an invertible coordinate map between basis
/// coefficients and standard coordinates.
///
/// For FPrime/FSecond the number of basis vectors is 2K while the ambient
/// standard-coordinate dimension is the closure max(2K, max pi(2j)), so every
/// permuted position fits; construction fails loudly otherwise. analyze is
/// the left inverse of synthesize on coefficient vectors (exact closed
/// forms); applying it to an x outside the truncated span projects onto it.
class BasisMap {
 public:
  static BasisMap standard(std::int64_t dim);
  static BasisMap summing(std::int64_t dim);
  static BasisMap difference(std::int64_t dim);
  static BasisMap fprime(Permutation pi);
  static BasisMap fsecond(Permutation pi);

  BasisKind kind() const { return kind_; }
  /// Ambient standard-coordinate dimension.
  std::int64_t dim() const { return dim_; }
  /// Number of basis vectors (coefficient indices run 1..num_vectors).
  std::int64_t num_vectors() const { return num_vectors_; }
  const Permutation& perm() const;
  std::string label() const;

 private:
  BasisMap(BasisKind kind, std::int64_t dim, std::int64_t num_vectors,
           std::shared_ptr<const Permutation> pi)
      : kind_(kind), dim_(dim), num_vectors_(num_vectors), pi_(std::move(pi)) {}

  BasisKind kind_;
  std::int64_t dim_;
  std::int64_t num_vectors_;
  std::shared_ptr<const Permutation> pi_;
};

/// Standard coordinates of the m-th basis vector (1 <= m <= num_vectors).
CoeffVec basis_vector(const BasisMap& basis, std::int64_t m);

/// Standard coordinates of sum_m a_m f_m (len(a) <= num_vectors).
CoeffVec synthesize(const BasisMap& basis, const CoeffVec& coeffs);

/// Basis coefficients of x (len(x) <= dim), by the closed forms:
/// Summing a_m = x_m - x_{m+1}; Difference a_m = sum_{i>=m} x_i;
/// FPrime a_{2k} = x_{pi(2k)}, a_{2k-1} = x_{2k-1} - a_{2k};
/// FSecond a_{2k-1} = x_{2k-1}, a_{2k} = x_{pi(2k)} - a_{2k-1}.
CoeffVec analyze(const BasisMap& basis, const CoeffVec& x);

/// Standard coordinates of the N-th partial sum of the basis expansion of x.
CoeffVec project_PN(const BasisMap& basis, const CoeffVec& x, std::int64_t N);

/// Lower bound on the unconditional constant of the basis in the given
/// space: max over sampled coefficient vectors a and sign vectors eps of
/// ||sum eps_m a_m f_m|| / ||sum a_m f_m||. The sign search is exhaustive
/// when a has at most 20 nonzeros, otherwise seeded random sampling with
/// single-flip hill climbing. Always >= 1. Deterministic for a fixed seed.
double unconditional_constant_lb(const BasisMap& basis, const SpaceSpec& space, int trials,
                                 std::uint64_t seed);

}  // namespace radbasis
