#include "radbasis/rademacher.hpp"

#include <algorithm>
#include <cmath>

#include "radbasis/compensated.hpp"
#include "radbasis/rng.hpp"

namespace radbasis {

namespace {

double pow_exponent(double v, double e) {
  if (e == 1.0) return v;
  if (e == 2.0) return v * v;
  return std::pow(v, e);
}

double root_exponent(double v, double e) {
  if (e == 1.0) return v;
  if (e == 2.0) return std::sqrt(v);
  return std::pow(v, 1.0 / e);
}

}  // namespace

// Plain in-order reference implementation: terms as given, one running
// compensated sum over the pattern (or sample) sequence. No canonicalization,
// no chunking, no threads.
RadNormResult rad_norm_serial(const RadElement& element, const SpaceSpec& space,
                              const RadNormConfig& cfg) {
  if (!(cfg.exponent >= 1.0)) {
    throw std::invalid_argument("RadNormConfig: exponent must be in [1, inf)");
  }
  const int n_terms = element.N();
  const std::size_t dim = static_cast<std::size_t>(element.dim());
  std::vector<std::vector<double>> terms;
  terms.reserve(static_cast<std::size_t>(n_terms));
  for (const auto& t : element.terms()) {
    std::vector<double> padded(dim, 0.0);
    std::copy(t.entries().begin(), t.entries().end(), padded.begin());
    terms.push_back(std::move(padded));
  }
  std::vector<double> scratch(dim, 0.0);

  auto signed_norm = [&](auto&& sign_at) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (int n = 0; n < n_terms; ++n) {
      const double s = sign_at(n);
      const auto& x = terms[static_cast<std::size_t>(n)];
      for (std::size_t i = 0; i < dim; ++i) scratch[i] += s * x[i];
    }
    return norm_span(scratch, space);
  };

  if (cfg.mode == RadNormConfig::Mode::Exact) {
    if (n_terms > kExactEnumerationCap) {
      throw ExactCapError("rad_norm_serial: exact enumeration capped at N <= 24");
    }
    CompensatedSum acc;
    const std::uint64_t total = std::uint64_t{1} << n_terms;
    for (std::uint64_t pattern = 0; pattern < total; ++pattern) {
      const double v =
          signed_norm([pattern](int n) { return (pattern >> n) & 1 ? -1.0 : 1.0; });
      acc.add(pow_exponent(v, cfg.exponent));
    }
    return RadNormResult{root_exponent(std::ldexp(acc.value(), -n_terms), cfg.exponent), 0.0};
  }

  if (cfg.samples < 1) {
    throw std::invalid_argument("RadNormConfig: Monte-Carlo needs at least one sample");
  }
  CompensatedSum acc;
  CompensatedSum acc_sq;
  for (std::uint64_t j = 0; j < cfg.samples; ++j) {
    const double v = signed_norm([&](int n) {
      return mc_sign(cfg.seed, j, static_cast<std::uint64_t>(n_terms),
                     static_cast<std::uint64_t>(n));
    });
    const double w = pow_exponent(v, cfg.exponent);
    acc.add(w);
    acc_sq.add(w * w);
  }
  const double count = static_cast<double>(cfg.samples);
  const double mean = acc.value() / count;
  double se_mean = 0.0;
  if (cfg.samples > 1) {
    const double variance = std::max(0.0, (acc_sq.value() - count * mean * mean) / (count - 1.0));
    se_mean = std::sqrt(variance / count);
  }
  const double value = root_exponent(mean, cfg.exponent);
  double se_value = se_mean;
  if (cfg.exponent != 1.0 && mean > 0.0) {
    se_value = se_mean * (1.0 / cfg.exponent) * std::pow(mean, 1.0 / cfg.exponent - 1.0);
  }
  return RadNormResult{value, se_value};
}

}  // namespace radbasis
