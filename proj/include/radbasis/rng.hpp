#pragma once

#include <cstdint>

namespace radbasis {

// Reproducible 64-bit generator (splitmix64). The state advances by a fixed
// odd increment and each output is a finalizing mix of the state, so the
// k-th output of a stream is a pure function of (seed, k). That random-access
// property is what makes parallel Monte-Carlo chunks deterministic: a chunk
// covering samples [a, b) reads exactly the outputs it owns, independent of
// how chunks are scheduled across threads.
//
// Constants are the published splitmix64 set:
//   increment 0x9E3779B97F4A7C15, mixers 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB.

inline constexpr std::uint64_t kSplitMixIncrement = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// k-th output (k = 0, 1, ...) of the splitmix64 stream with the given seed.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  return splitmix64_mix(seed + kSplitMixIncrement * (k + 1));
}

/// Rademacher sign convention for Monte-Carlo sampling: the sign of term i
/// (0-based) in sample j is the high bit of output number j*n_terms + i.
inline double mc_sign(std::uint64_t seed, std::uint64_t sample, std::uint64_t n_terms,
                      std::uint64_t term) {
  const std::uint64_t u = splitmix64_at(seed, sample * n_terms + term);
  return (u >> 63) ? -1.0 : 1.0;
}

/// Sequential form, for places that just need a stream (test data, searches).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kSplitMixIncrement;
    return splitmix64_mix(state_);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace radbasis
