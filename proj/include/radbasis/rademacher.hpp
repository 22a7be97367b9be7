#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "radbasis/semigroup.hpp"
#include "radbasis/spaces.hpp"

namespace radbasis {

/// Hard cap for exact sign enumeration (2^24 ~ 16.7M patterns).
inline constexpr int kExactEnumerationCap = 24;

struct ExactCapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Step function on [0,1) that is constant on the 2^J dyadic intervals
/// [i 2^{-J}, (i+1) 2^{-J}).
struct DyadicStep {
  int level = 0;
  std::vector<double> values;  // length exactly 2^level
};

/// The k-th Rademacher function sign(sin(2^k pi w)) refined to dyadic level J
/// (requires k <= J; coarser levels cannot represent it).
DyadicStep rademacher_sign(int k, int level);

struct RadNormConfig {
  enum class Mode { Exact, MonteCarlo };
  Mode mode = Mode::Exact;
  double exponent = 1.0;  // Rademacher-average exponent, >= 1
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static RadNormConfig exact(double exponent = 1.0);
  static RadNormConfig monte_carlo(std::uint64_t samples, std::uint64_t seed,
                                   double exponent = 1.0);
};

struct RadNormResult {
  double value = 0.0;
  double stderr_value = 0.0;  // 0 in exact mode
};

/// Norm of a finite Rademacher sum:
///   exact: (2^{-N} sum over all sign vectors of ||sum_n eps_n x_n||^e)^{1/e}
///   Monte-Carlo: the same average over seeded sign samples, with the
///   standard error of the estimate.
///
/// This is the OpenMP kernel. Patterns (or samples) are split into
/// fixed-size chunks independent of the thread count; each chunk accumulates
/// with a compensated sum and the chunk partials are combined by a fixed
/// pairwise reduction tree, so results are bit-identical across thread
/// counts and reruns. Terms are canonicalized first (each term flipped so
/// its first nonzero entry is positive — a measure-preserving mirror of the
/// sign patterns — then sorted), which makes the result exactly invariant
/// under negating any single term and under permuting the Rademacher
/// indices. Monte-Carlo signs come from the documented splitmix64
/// random-access stream (see rng.hpp), so chunks own their samples and the
/// result is seed-deterministic.
RadNormResult rad_norm(const RadElement& element, const SpaceSpec& space,
                       const RadNormConfig& cfg);

/// Naive single-threaded reference: enumerates patterns in order with the
/// terms as given and a plain compensated accumulation. Kept as the
/// independent check for rad_norm and as the benchmark baseline.
RadNormResult rad_norm_serial(const RadElement& element, const SpaceSpec& space,
                              const RadNormConfig& cfg);

/// E|sum_k a_k r_k| for scalar coefficients, with stderr in MC mode.
RadNormResult rademacher_abs_mean(const std::vector<double>& coeffs, const RadNormConfig& cfg);

/// E|sum_k a_k r_k| / (sum_k a_k^2)^{1/2}. At most 1 up to sampling error;
/// cfg supplies the mode/samples/seed (the expectation exponent is 1).
double khintchine_ratio(const CoeffVec& a, const RadNormConfig& cfg);

/// P_n f = sum_{k<=n} r_k <f, r_k> with exact dyadic integrals.
DyadicStep dyadic_project_Pn(const DyadicStep& f, int n);

/// L^p([0,1]) norm of a dyadic step function, p >= 1.
double lp_step_norm(const DyadicStep& f, double p);

}  // namespace radbasis
