#include "radbasis/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radbasis/compensated.hpp"
#include "radbasis/rng.hpp"

namespace radbasis {

namespace {

constexpr std::uint64_t kExactChunk = 4096;
constexpr std::uint64_t kMcChunk = 8192;
constexpr int kMaxDyadicLevel = 24;

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

void validate_config(const RadNormConfig& cfg) {
  if (!(cfg.exponent >= 1.0) || !std::isfinite(cfg.exponent)) {
    throw std::invalid_argument("RadNormConfig: exponent must be in [1, inf)");
  }
  if (cfg.mode == RadNormConfig::Mode::MonteCarlo && cfg.samples < 1) {
    throw std::invalid_argument("RadNormConfig: Monte-Carlo needs at least one sample");
  }
}

// Terms padded to the ambient dimension, each flipped so its first nonzero
// entry is positive, sorted lexicographically. Equivalent inputs (term
// negations, index permutations) canonicalize to the same list, so the
// enumeration below runs a bitwise-identical operation sequence for them.
std::vector<std::vector<double>> canonical_terms(const RadElement& element) {
  const std::size_t dim = static_cast<std::size_t>(element.dim());
  std::vector<std::vector<double>> terms;
  terms.reserve(static_cast<std::size_t>(element.N()));
  for (const auto& t : element.terms()) {
    std::vector<double> padded(dim, 0.0);
    const auto& e = t.entries();
    std::copy(e.begin(), e.end(), padded.begin());
    for (double v : padded) {
      if (v != 0.0) {
        if (v < 0.0) {
          for (double& w : padded) w = -w;
        }
        break;
      }
    }
    terms.push_back(std::move(padded));
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

// Fixed pairwise reduction tree over chunk partials.
double tree_reduce(std::vector<double>& partial) {
  const std::size_t n = partial.size();
  for (std::size_t stride = 1; stride < n; stride *= 2) {
    for (std::size_t i = 0; i + stride < n; i += 2 * stride) {
      partial[i] += partial[i + stride];
    }
  }
  return partial.empty() ? 0.0 : partial[0];
}

// ||sum_n sign_n x_n|| with the signs taken from a callable; the sum is
// built fresh in term order so the value depends only on the sign vector.
template <typename SignAt>
double signed_sum_norm(const std::vector<std::vector<double>>& terms, std::vector<double>& scratch,
                       const SpaceSpec& space, SignAt&& sign_at) {
  std::fill(scratch.begin(), scratch.end(), 0.0);
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const double s = sign_at(n);
    const auto& x = terms[n];
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] += s * x[i];
  }
  return norm_span(scratch, space);
}

RadNormResult exact_norm(const std::vector<std::vector<double>>& terms, std::size_t dim,
                         const SpaceSpec& space, double exponent) {
  const int n_terms = static_cast<int>(terms.size());
  if (n_terms > kExactEnumerationCap) {
    throw ExactCapError("rad_norm: exact enumeration capped at N <= 24");
  }
  const std::uint64_t total = std::uint64_t{1} << n_terms;
  const std::uint64_t n_chunks = (total + kExactChunk - 1) / kExactChunk;
  std::vector<double> partial(n_chunks, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    std::vector<double> scratch(dim, 0.0);
    CompensatedSum acc;
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kExactChunk;
    const std::uint64_t end = std::min(total, begin + kExactChunk);
    for (std::uint64_t pattern = begin; pattern < end; ++pattern) {
      const double v = signed_sum_norm(terms, scratch, space, [pattern](std::size_t n) {
        return (pattern >> n) & 1 ? -1.0 : 1.0;
      });
      acc.add(pow_exponent(v, exponent));
    }
    partial[static_cast<std::size_t>(c)] = acc.value();
  }

  const double mean = std::ldexp(tree_reduce(partial), -n_terms);
  return RadNormResult{root_exponent(mean, exponent), 0.0};
}

RadNormResult mc_norm(const std::vector<std::vector<double>>& terms, std::size_t dim,
                      const SpaceSpec& space, double exponent, std::uint64_t samples,
                      std::uint64_t seed) {
  const std::uint64_t n_terms = terms.size();
  const std::uint64_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<double> partial_sum(n_chunks, 0.0);
  std::vector<double> partial_sq(n_chunks, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    std::vector<double> scratch(dim, 0.0);
    CompensatedSum acc;
    CompensatedSum acc_sq;
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kMcChunk;
    const std::uint64_t end = std::min(samples, begin + kMcChunk);
    for (std::uint64_t j = begin; j < end; ++j) {
      const double v = signed_sum_norm(terms, scratch, space, [seed, j, n_terms](std::size_t n) {
        return mc_sign(seed, j, n_terms, n);
      });
      const double w = pow_exponent(v, exponent);
      acc.add(w);
      acc_sq.add(w * w);
    }
    partial_sum[static_cast<std::size_t>(c)] = acc.value();
    partial_sq[static_cast<std::size_t>(c)] = acc_sq.value();
  }

  const double s1 = tree_reduce(partial_sum);
  const double s2 = tree_reduce(partial_sq);
  const double count = static_cast<double>(samples);
  const double mean = s1 / count;
  double se_mean = 0.0;
  if (samples > 1) {
    const double variance = std::max(0.0, (s2 - count * mean * mean) / (count - 1.0));
    se_mean = std::sqrt(variance / count);
  }
  const double value = root_exponent(mean, exponent);
  double se_value = se_mean;
  if (exponent != 1.0 && mean > 0.0) {
    se_value = se_mean * (1.0 / exponent) * std::pow(mean, 1.0 / exponent - 1.0);
  }
  return RadNormResult{value, se_value};
}

}  // namespace

RadNormConfig RadNormConfig::exact(double exponent) {
  RadNormConfig cfg;
  cfg.mode = Mode::Exact;
  cfg.exponent = exponent;
  validate_config(cfg);
  return cfg;
}

RadNormConfig RadNormConfig::monte_carlo(std::uint64_t samples, std::uint64_t seed,
                                         double exponent) {
  RadNormConfig cfg;
  cfg.mode = Mode::MonteCarlo;
  cfg.exponent = exponent;
  cfg.samples = samples;
  cfg.seed = seed;
  validate_config(cfg);
  return cfg;
}

RadNormResult rad_norm(const RadElement& element, const SpaceSpec& space,
                       const RadNormConfig& cfg) {
  validate_config(cfg);
  const auto terms = canonical_terms(element);
  const std::size_t dim = static_cast<std::size_t>(element.dim());
  if (cfg.mode == RadNormConfig::Mode::Exact) {
    return exact_norm(terms, dim, space, cfg.exponent);
  }
  return mc_norm(terms, dim, space, cfg.exponent, cfg.samples, cfg.seed);
}

DyadicStep rademacher_sign(int k, int level) {
  if (level < 0 || level > kMaxDyadicLevel) {
    throw std::invalid_argument("rademacher_sign: level out of range");
  }
  if (k < 1 || k > level) {
    throw std::invalid_argument("rademacher_sign: requires 1 <= k <= level");
  }
  DyadicStep f;
  f.level = level;
  f.values.resize(std::size_t{1} << level);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    f.values[i] = ((i >> (level - k)) & 1) ? -1.0 : 1.0;
  }
  return f;
}

RadNormResult rademacher_abs_mean(const std::vector<double>& coeffs, const RadNormConfig& cfg) {
  validate_config(cfg);
  if (coeffs.empty()) throw std::invalid_argument("rademacher_abs_mean: empty coefficient list");
  for (double a : coeffs) {
    if (!std::isfinite(a)) throw std::invalid_argument("rademacher_abs_mean: entries must be finite");
  }
  const int n_terms = static_cast<int>(coeffs.size());

  if (cfg.mode == RadNormConfig::Mode::Exact) {
    if (n_terms > kExactEnumerationCap) {
      throw ExactCapError("rademacher_abs_mean: exact enumeration capped at N <= 24");
    }
    const std::uint64_t total = std::uint64_t{1} << n_terms;
    const std::uint64_t n_chunks = (total + kExactChunk - 1) / kExactChunk;
    std::vector<double> partial(n_chunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      CompensatedSum acc;
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kExactChunk;
      const std::uint64_t end = std::min(total, begin + kExactChunk);
      for (std::uint64_t pattern = begin; pattern < end; ++pattern) {
        double s = 0.0;
        for (int n = 0; n < n_terms; ++n) {
          s += ((pattern >> n) & 1) ? -coeffs[static_cast<std::size_t>(n)]
                                    : coeffs[static_cast<std::size_t>(n)];
        }
        acc.add(std::abs(s));
      }
      partial[static_cast<std::size_t>(c)] = acc.value();
    }
    return RadNormResult{std::ldexp(tree_reduce(partial), -n_terms), 0.0};
  }

  const std::uint64_t n_chunks = (cfg.samples + kMcChunk - 1) / kMcChunk;
  std::vector<double> partial_sum(n_chunks, 0.0);
  std::vector<double> partial_sq(n_chunks, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
    CompensatedSum acc;
    CompensatedSum acc_sq;
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kMcChunk;
    const std::uint64_t end = std::min(cfg.samples, begin + kMcChunk);
    for (std::uint64_t j = begin; j < end; ++j) {
      double s = 0.0;
      for (int n = 0; n < n_terms; ++n) {
        s += mc_sign(cfg.seed, j, static_cast<std::uint64_t>(n_terms),
                     static_cast<std::uint64_t>(n)) *
             coeffs[static_cast<std::size_t>(n)];
      }
      const double w = std::abs(s);
      acc.add(w);
      acc_sq.add(w * w);
    }
    partial_sum[static_cast<std::size_t>(c)] = acc.value();
    partial_sq[static_cast<std::size_t>(c)] = acc_sq.value();
  }
  const double s1 = tree_reduce(partial_sum);
  const double s2 = tree_reduce(partial_sq);
  const double count = static_cast<double>(cfg.samples);
  const double mean = s1 / count;
  double se_mean = 0.0;
  if (cfg.samples > 1) {
    const double variance = std::max(0.0, (s2 - count * mean * mean) / (count - 1.0));
    se_mean = std::sqrt(variance / count);
  }
  return RadNormResult{mean, se_mean};
}

double khintchine_ratio(const CoeffVec& a, const RadNormConfig& cfg) {
  const auto& e = a.entries();
  std::size_t support = 0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0.0) {
      ++support;
      last_nonzero = i;
    }
  }
  if (support == 0) throw std::invalid_argument("khintchine_ratio: zero vector");

  RadNormConfig mean_cfg = cfg;
  mean_cfg.exponent = 1.0;  // the ratio is defined through E|.|
  const double mean = rademacher_abs_mean(e, mean_cfg).value;

  double l2 = 0.0;
  if (support == 1) {
    l2 = std::abs(e[last_nonzero]);  // exact for a singleton
  } else {
    CompensatedSum sq;
    for (double v : e) {
      if (v != 0.0) sq.add(v * v);
    }
    l2 = std::sqrt(sq.value());
  }
  return mean / l2;
}

DyadicStep dyadic_project_Pn(const DyadicStep& f, int n) {
  if (f.values.size() != (std::size_t{1} << f.level)) {
    throw std::invalid_argument("DyadicStep: values length must be 2^level");
  }
  if (n < 1 || n > f.level) {
    throw std::invalid_argument("dyadic_project_Pn: requires 1 <= n <= level");
  }
  std::vector<double> coeff(static_cast<std::size_t>(n), 0.0);
  for (int k = 1; k <= n; ++k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double sign = ((i >> (f.level - k)) & 1) ? -1.0 : 1.0;
      s.add(sign * f.values[i]);
    }
    coeff[static_cast<std::size_t>(k - 1)] = std::ldexp(s.value(), -f.level);
  }
  DyadicStep out;
  out.level = f.level;
  out.values.assign(f.values.size(), 0.0);
  for (int k = 1; k <= n; ++k) {
    const double c = coeff[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      const double sign = ((i >> (f.level - k)) & 1) ? -1.0 : 1.0;
      out.values[i] += c * sign;
    }
  }
  return out;
}

double lp_step_norm(const DyadicStep& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_step_norm: p must be >= 1");
  if (f.values.size() != (std::size_t{1} << f.level)) {
    throw std::invalid_argument("DyadicStep: values length must be 2^level");
  }
  CompensatedSum s;
  for (double v : f.values) {
    if (v != 0.0) s.add(pow_exponent(std::abs(v), p));
  }
  return root_exponent(std::ldexp(s.value(), -f.level), p);
}

}  // namespace radbasis
