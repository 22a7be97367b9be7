#include "radbasis/bases.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radbasis/rng.hpp"

namespace radbasis {

std::int64_t first_even_in_block(std::int64_t k) {
  if (k < 2) throw std::invalid_argument("first_even_in_block: block B_1 contains no even number");
  const auto b = block_bounds(k);
  return (b.lo % 2 == 0) ? b.lo : b.lo + 1;
}

std::int64_t b_value(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("b_value: k must be >= 0");
  return first_even_in_block(k + 2);
}

bool is_b_value(std::int64_t even) {
  if (even < 2 || even % 2 != 0) return false;
  const std::int64_t k = block_index(even);
  if (k < 2) return false;
  return even == first_even_in_block(k);
}

std::int64_t Permutation::apply(std::int64_t m) const {
  if (m < 1) throw std::invalid_argument("Permutation::apply: indices are 1-based");
  if (m % 2 != 0) return m;
  if (m > 2 * K_) throw std::out_of_range("Permutation::apply: even argument beyond table");
  return even_values_[static_cast<std::size_t>(m / 2 - 1)];
}

Permutation make_permutation_pi(std::int64_t K) {
  if (K < 1) throw std::invalid_argument("make_permutation_pi: K must be >= 1");
  Permutation pi;
  pi.K_ = K;
  pi.even_values_.resize(static_cast<std::size_t>(K));
  // The m = 4k arm consumes the non-b even numbers in increasing order
  // (the two arms draw from disjoint pools), so a cursor suffices.
  std::int64_t cursor = 0;
  for (std::int64_t j = 1; j <= K; ++j) {
    const std::int64_t m = 2 * j;
    std::int64_t value = 0;
    if (m % 4 == 2) {
      value = b_value((m - 2) / 4);
    } else {
      std::int64_t c = cursor + 2;
      while (is_b_value(c)) c += 2;
      cursor = c;
      value = c;
    }
    pi.even_values_[static_cast<std::size_t>(j - 1)] = value;
    pi.max_value_ = std::max(pi.max_value_, value);
  }
  return pi;
}

BasisMap BasisMap::standard(std::int64_t dim) {
  if (dim < 1) throw std::invalid_argument("BasisMap: dim must be >= 1");
  return BasisMap(BasisKind::Standard, dim, dim, nullptr);
}

BasisMap BasisMap::summing(std::int64_t dim) {
  if (dim < 1) throw std::invalid_argument("BasisMap: dim must be >= 1");
  return BasisMap(BasisKind::Summing, dim, dim, nullptr);
}

BasisMap BasisMap::difference(std::int64_t dim) {
  if (dim < 1) throw std::invalid_argument("BasisMap: dim must be >= 1");
  return BasisMap(BasisKind::Difference, dim, dim, nullptr);
}

BasisMap BasisMap::fprime(Permutation pi) {
  const std::int64_t m = 2 * pi.K();
  const std::int64_t dim = std::max(m, pi.max_even_value());
  return BasisMap(BasisKind::FPrime, dim, m, std::make_shared<Permutation>(std::move(pi)));
}

BasisMap BasisMap::fsecond(Permutation pi) {
  const std::int64_t m = 2 * pi.K();
  const std::int64_t dim = std::max(m, pi.max_even_value());
  return BasisMap(BasisKind::FSecond, dim, m, std::make_shared<Permutation>(std::move(pi)));
}

const Permutation& BasisMap::perm() const {
  if (!pi_) throw std::logic_error("BasisMap: this basis kind carries no permutation");
  return *pi_;
}

std::string BasisMap::label() const {
  switch (kind_) {
    case BasisKind::Standard:
      return "standard";
    case BasisKind::Summing:
      return "summing";
    case BasisKind::Difference:
      return "difference";
    case BasisKind::FPrime:
      return "fprime";
    case BasisKind::FSecond:
      return "fsecond";
  }
  return "?";
}

CoeffVec basis_vector(const BasisMap& basis, std::int64_t m) {
  if (m < 1 || m > basis.num_vectors()) {
    throw std::invalid_argument("basis_vector: index out of range");
  }
  switch (basis.kind()) {
    case BasisKind::Standard:
      return CoeffVec::unit(m, m);
    case BasisKind::Summing:
      return CoeffVec(std::vector<double>(static_cast<std::size_t>(m), 1.0));
    case BasisKind::Difference: {
      if (m == 1) return CoeffVec::unit(1, 1);
      std::vector<double> e(static_cast<std::size_t>(m), 0.0);
      e[static_cast<std::size_t>(m - 2)] = -1.0;
      e[static_cast<std::size_t>(m - 1)] = 1.0;
      return CoeffVec(std::move(e));
    }
    case BasisKind::FPrime: {
      if (m % 2 != 0) return CoeffVec::unit(m, m);
      const std::int64_t img = basis.perm().apply(m);
      std::vector<double> e(static_cast<std::size_t>(std::max(img, m - 1)), 0.0);
      e[static_cast<std::size_t>(img - 1)] += 1.0;
      e[static_cast<std::size_t>(m - 2)] += 1.0;
      return CoeffVec(std::move(e));
    }
    case BasisKind::FSecond: {
      if (m % 2 == 0) {
        const std::int64_t img = basis.perm().apply(m);
        return CoeffVec::unit(img, img);
      }
      const std::int64_t img = basis.perm().apply(m + 1);
      std::vector<double> e(static_cast<std::size_t>(std::max(img, m)), 0.0);
      e[static_cast<std::size_t>(m - 1)] += 1.0;
      e[static_cast<std::size_t>(img - 1)] += 1.0;
      return CoeffVec(std::move(e));
    }
  }
  throw std::logic_error("basis_vector: unreachable");
}

CoeffVec synthesize(const BasisMap& basis, const CoeffVec& coeffs) {
  const std::int64_t len = coeffs.dim();
  if (len > basis.num_vectors()) {
    throw std::invalid_argument("synthesize: more coefficients than basis vectors");
  }
  const auto& a = coeffs.entries();
  switch (basis.kind()) {
    case BasisKind::Standard:
      return coeffs;
    case BasisKind::Summing: {
      // x_j = sum_{m >= j} a_m: one suffix-sum pass.
      std::vector<double> y(static_cast<std::size_t>(len), 0.0);
      double run = 0.0;
      for (std::int64_t j = len; j >= 1; --j) {
        run += a[static_cast<std::size_t>(j - 1)];
        y[static_cast<std::size_t>(j - 1)] = run;
      }
      return CoeffVec(std::move(y));
    }
    case BasisKind::Difference: {
      // x_j = a_j - a_{j+1} (a beyond len is zero).
      std::vector<double> y(static_cast<std::size_t>(len), 0.0);
      for (std::int64_t j = 1; j <= len; ++j) {
        const double nxt = (j < len) ? a[static_cast<std::size_t>(j)] : 0.0;
        y[static_cast<std::size_t>(j - 1)] = a[static_cast<std::size_t>(j - 1)] - nxt;
      }
      return CoeffVec(std::move(y));
    }
    case BasisKind::FPrime: {
      std::vector<double> y(static_cast<std::size_t>(basis.dim()), 0.0);
      for (std::int64_t m = 1; m <= len; ++m) {
        const double c = a[static_cast<std::size_t>(m - 1)];
        if (c == 0.0) continue;
        if (m % 2 != 0) {
          y[static_cast<std::size_t>(m - 1)] += c;
        } else {
          y[static_cast<std::size_t>(basis.perm().apply(m) - 1)] += c;
          y[static_cast<std::size_t>(m - 2)] += c;
        }
      }
      return CoeffVec(std::move(y));
    }
    case BasisKind::FSecond: {
      std::vector<double> y(static_cast<std::size_t>(basis.dim()), 0.0);
      for (std::int64_t m = 1; m <= len; ++m) {
        const double c = a[static_cast<std::size_t>(m - 1)];
        if (c == 0.0) continue;
        if (m % 2 != 0) {
          y[static_cast<std::size_t>(m - 1)] += c;
          y[static_cast<std::size_t>(basis.perm().apply(m + 1) - 1)] += c;
        } else {
          y[static_cast<std::size_t>(basis.perm().apply(m) - 1)] += c;
        }
      }
      return CoeffVec(std::move(y));
    }
  }
  throw std::logic_error("synthesize: unreachable");
}

CoeffVec analyze(const BasisMap& basis, const CoeffVec& x) {
  const std::int64_t len = x.dim();
  if (len > basis.dim()) throw std::invalid_argument("analyze: vector beyond ambient dimension");
  switch (basis.kind()) {
    case BasisKind::Standard:
      return x;
    case BasisKind::Summing: {
      std::vector<double> a(static_cast<std::size_t>(len), 0.0);
      for (std::int64_t m = 1; m <= len; ++m) {
        a[static_cast<std::size_t>(m - 1)] = x.at(m) - x.at(m + 1);
      }
      return CoeffVec(std::move(a));
    }
    case BasisKind::Difference: {
      std::vector<double> a(static_cast<std::size_t>(len), 0.0);
      double run = 0.0;
      for (std::int64_t m = len; m >= 1; --m) {
        run += x.at(m);
        a[static_cast<std::size_t>(m - 1)] = run;
      }
      return CoeffVec(std::move(a));
    }
    case BasisKind::FPrime: {
      const std::int64_t m_count = basis.num_vectors();
      std::vector<double> a(static_cast<std::size_t>(m_count), 0.0);
      for (std::int64_t k = 1; 2 * k <= m_count; ++k) {
        const double even = x.at(basis.perm().apply(2 * k));
        a[static_cast<std::size_t>(2 * k - 1)] = even;
        a[static_cast<std::size_t>(2 * k - 2)] = x.at(2 * k - 1) - even;
      }
      return CoeffVec(std::move(a));
    }
    case BasisKind::FSecond: {
      const std::int64_t m_count = basis.num_vectors();
      std::vector<double> a(static_cast<std::size_t>(m_count), 0.0);
      for (std::int64_t k = 1; 2 * k <= m_count; ++k) {
        const double odd = x.at(2 * k - 1);
        a[static_cast<std::size_t>(2 * k - 2)] = odd;
        a[static_cast<std::size_t>(2 * k - 1)] = x.at(basis.perm().apply(2 * k)) - odd;
      }
      return CoeffVec(std::move(a));
    }
  }
  throw std::logic_error("analyze: unreachable");
}

CoeffVec project_PN(const BasisMap& basis, const CoeffVec& x, std::int64_t N) {
  if (N < 1 || N > basis.num_vectors()) throw std::invalid_argument("project_PN: N out of range");
  const CoeffVec a = analyze(basis, x);
  if (N >= a.dim()) return synthesize(basis, a);
  return synthesize(basis, a.truncated(N));
}

namespace {

double flipped_norm(const BasisMap& basis, const SpaceSpec& space, const std::vector<double>& a,
                    const std::vector<signed char>& sign) {
  std::vector<double> fa(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = sign[i] < 0 ? -a[i] : a[i];
  return norm(synthesize(basis, CoeffVec(std::move(fa))), space);
}

// Best sign-flip ratio for one coefficient vector; exhaustive over the
// support when small enough, otherwise sampling plus single-flip hill
// climbing. `base` is the unflipped norm (> 0).
double best_flip_ratio(const BasisMap& basis, const SpaceSpec& space, const std::vector<double>& a,
                       double base, SplitMix64& rng) {
  const std::size_t n = a.size();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0.0) support.push_back(i);
  }
  const std::size_t s = support.size();
  std::vector<signed char> sign(n, 1);

  const bool exhaustive =
      s <= 20 && (double(std::uint64_t{1} << s) * static_cast<double>(basis.dim()) <= 5e7);
  if (exhaustive) {
    double best = base;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
      for (std::size_t i = 0; i < s; ++i) sign[support[i]] = (mask >> i) & 1 ? -1 : 1;
      best = std::max(best, flipped_norm(basis, space, a, sign));
    }
    return best / base;
  }

  // Seeded random draws, then hill climbing from the best one.
  double best = base;
  std::vector<signed char> best_sign(n, 1);
  auto consider = [&](const std::vector<signed char>& cand) {
    const double v = flipped_norm(basis, space, a, cand);
    if (v > best) {
      best = v;
      best_sign = cand;
    }
  };
  std::vector<signed char> cand(n, 1);
  for (std::size_t i = 0; i < n; ++i) cand[i] = (i % 2 == 0) ? -1 : 1;
  consider(cand);
  for (int draw = 0; draw < 128; ++draw) {
    for (std::size_t i = 0; i < n; ++i) cand[i] = (rng.next() >> 63) ? -1 : 1;
    consider(cand);
  }
  for (int pass = 0; pass < 4; ++pass) {
    bool improved = false;
    for (std::size_t i : support) {
      best_sign[i] = static_cast<signed char>(-best_sign[i]);
      const double v = flipped_norm(basis, space, a, best_sign);
      if (v > best) {
        best = v;
        improved = true;
      } else {
        best_sign[i] = static_cast<signed char>(-best_sign[i]);
      }
    }
    if (!improved) break;
  }
  return best / base;
}

}  // namespace

double unconditional_constant_lb(const BasisMap& basis, const SpaceSpec& space, int trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("unconditional_constant_lb: trials must be >= 1");
  const std::int64_t m_count = basis.num_vectors();
  SplitMix64 rng(seed);
  double best = 1.0;

  std::vector<std::vector<double>> candidates;
  // Alternating-sign geometric profiles; r = 0.5 realizes the small-dim
  // extremal directions of the summing/difference bases, r = 1 the flat one.
  for (double r : {0.5, 0.9, 1.0}) {
    std::vector<double> a(static_cast<std::size_t>(m_count), 0.0);
    for (std::int64_t m = 1; m <= m_count; ++m) {
      const double mag = std::pow(r, static_cast<double>(m - 1));
      a[static_cast<std::size_t>(m - 1)] = (m % 2 == 0) ? mag : -mag;
    }
    candidates.push_back(std::move(a));
  }
  candidates.push_back(std::vector<double>(static_cast<std::size_t>(m_count), 1.0));

  while (static_cast<int>(candidates.size()) < trials) {
    std::vector<double> a(static_cast<std::size_t>(m_count), 0.0);
    switch (candidates.size() % 3) {
      case 0:
        for (auto& v : a) v = rng.next_symmetric();
        break;
      case 1: {
        // Box-Muller pairs from the seeded stream.
        for (std::size_t i = 0; i < a.size(); ++i) {
          const double u1 = std::max(rng.next_unit(), 0x1.0p-60);
          const double u2 = rng.next_unit();
          a[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
        break;
      }
      default: {
        const std::uint64_t s =
            1 + rng.next_below(static_cast<std::uint64_t>(std::min<std::int64_t>(m_count, 20)));
        for (std::uint64_t i = 0; i < s; ++i) {
          a[rng.next_below(static_cast<std::uint64_t>(m_count))] = rng.next_symmetric();
        }
        break;
      }
    }
    candidates.push_back(std::move(a));
  }
  if (static_cast<int>(candidates.size()) > trials) {
    candidates.resize(static_cast<std::size_t>(trials));
  }

  for (const auto& a : candidates) {
    const bool nonzero = std::any_of(a.begin(), a.end(), [](double v) { return v != 0.0; });
    if (!nonzero) continue;
    const double base = norm(synthesize(basis, CoeffVec(a)), space);
    if (!(base > 0.0)) continue;
    best = std::max(best, best_flip_ratio(basis, space, a, base, rng));
  }
  return best;
}

}  // namespace radbasis
