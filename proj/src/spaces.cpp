#include "radbasis/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "radbasis/compensated.hpp"

namespace radbasis {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double pow_term(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

double pow_root(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

// Streaming norm evaluation over nonzero entries in ascending position
// order. Both the dense and the sparse entry points drive this one kernel,
// so they perform bit-identical floating-point operation sequences
// (skipped zero entries and empty blocks are exact no-ops of the
// compensated accumulation).
class NormKernel {
 public:
  explicit NormKernel(const SpaceSpec& space) : space_(space) {}

  void feed(std::int64_t pos, double value) {
    if (value == 0.0) return;
    switch (space_.kind) {
      case SpaceKind::SupC0:
        max_abs_ = std::max(max_abs_, std::abs(value));
        break;
      case SpaceKind::Lp:
        outer_.add(pow_term(std::abs(value), space_.p));
        break;
      case SpaceKind::BlockXp:
        if (!block_open_ || pos > block_hi_) {
          close_block();
          block_k_ = block_index(pos);
          const auto b = block_bounds(block_k_);
          block_hi_ = b.hi;
          block_open_ = true;
        }
        block_sq_.add(value * value);
        break;
    }
  }

  double finish() {
    switch (space_.kind) {
      case SpaceKind::SupC0:
        return max_abs_;
      case SpaceKind::Lp:
        return pow_root(outer_.value(), space_.p);
      case SpaceKind::BlockXp:
        close_block();
        return pow_root(outer_.value(), space_.p);
    }
    return 0.0;
  }

 private:
  void close_block() {
    if (!block_open_) return;
    const double block_l2 = std::sqrt(block_sq_.value());
    outer_.add(pow_term(block_l2, space_.p));
    block_sq_ = CompensatedSum{};
    block_open_ = false;
  }

  SpaceSpec space_;
  double max_abs_ = 0.0;
  CompensatedSum outer_;
  CompensatedSum block_sq_;
  std::int64_t block_k_ = 0;
  std::int64_t block_hi_ = 0;
  bool block_open_ = false;
};

}  // namespace

CoeffVec::CoeffVec(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("CoeffVec: dim must be >= 1");
  if (!all_finite(entries_)) throw std::invalid_argument("CoeffVec: entries must be finite");
}

CoeffVec CoeffVec::zeros(std::int64_t dim) {
  if (dim < 1) throw std::invalid_argument("CoeffVec: dim must be >= 1");
  return CoeffVec(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

CoeffVec CoeffVec::unit(std::int64_t dim, std::int64_t pos) {
  if (pos < 1 || pos > dim) throw std::invalid_argument("CoeffVec::unit: position out of range");
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  e[static_cast<std::size_t>(pos - 1)] = 1.0;
  return CoeffVec(std::move(e));
}

double CoeffVec::at(std::int64_t pos) const {
  if (pos < 1) throw std::invalid_argument("CoeffVec::at: positions are 1-based");
  if (pos > dim()) return 0.0;
  return entries_[static_cast<std::size_t>(pos - 1)];
}

CoeffVec CoeffVec::truncated(std::int64_t new_dim) const {
  if (new_dim < 1 || new_dim > dim()) {
    throw std::invalid_argument("CoeffVec::truncated: length out of range");
  }
  return CoeffVec(std::vector<double>(entries_.begin(), entries_.begin() + new_dim));
}

bool same_sequence(const CoeffVec& a, const CoeffVec& b) {
  const std::int64_t d = std::max(a.dim(), b.dim());
  for (std::int64_t pos = 1; pos <= d; ++pos) {
    if (a.at(pos) != b.at(pos)) return false;
  }
  return true;
}

SpaceSpec SpaceSpec::sup_c0() { return SpaceSpec{SpaceKind::SupC0, 0.0}; }

SpaceSpec SpaceSpec::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("SpaceSpec: p must be in [1, inf)");
  return SpaceSpec{SpaceKind::Lp, p};
}

SpaceSpec SpaceSpec::block_xp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("SpaceSpec: p must be in [1, inf)");
  return SpaceSpec{SpaceKind::BlockXp, p};
}

std::string SpaceSpec::label() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", p);
  switch (kind) {
    case SpaceKind::SupC0:
      return "c0";
    case SpaceKind::Lp:
      return std::string("l^") + buf;
    case SpaceKind::BlockXp:
      return std::string("X^") + buf;
  }
  return "?";
}

double norm_span(std::span<const double> entries, const SpaceSpec& space) {
  NormKernel k(space);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    k.feed(static_cast<std::int64_t>(i) + 1, entries[i]);
  }
  return k.finish();
}

double norm(const CoeffVec& v, const SpaceSpec& space) { return norm_span(v.entries(), space); }

double norm_prefix(const CoeffVec& v, const SpaceSpec& space, std::int64_t len) {
  if (len < 1 || len > v.dim()) throw std::invalid_argument("norm_prefix: length out of range");
  return norm_span(std::span<const double>(v.entries().data(), static_cast<std::size_t>(len)),
                   space);
}

double sparse_norm(std::span<const SparseEntry> entries, const SpaceSpec& space) {
  NormKernel k(space);
  std::int64_t last = 0;
  for (const auto& [pos, value] : entries) {
    if (pos <= last) throw std::invalid_argument("sparse_norm: positions must be strictly increasing");
    last = pos;
    k.feed(pos, value);
  }
  return k.finish();
}

BlockBounds block_bounds(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("block_bounds: k must be >= 1");
  const __int128 kk = k;
  const __int128 hi = kk * (kk + 1) / 2;
  if (hi > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("block_bounds: block index arithmetic overflows 64 bits");
  }
  const __int128 lo = kk * (kk - 1) / 2 + 1;
  return BlockBounds{static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

std::int64_t block_index(std::int64_t pos) {
  if (pos < 1) throw std::invalid_argument("block_index: positions are 1-based");
  auto hi_of = [](std::int64_t k) -> __int128 {
    return static_cast<__int128>(k) * (k + 1) / 2;
  };
  std::int64_t k =
      static_cast<std::int64_t>((std::sqrt(8.0 * static_cast<double>(pos) + 1.0) - 1.0) / 2.0);
  if (k < 1) k = 1;
  while (k > 1 && hi_of(k - 1) >= pos) --k;
  while (hi_of(k) < pos) ++k;
  return k;
}

namespace {

// Dense witnesses materialize dim = hi(B_{2^n_max}) entries; cap the level so
// allocations stay below ~70 MB.
constexpr int kMaxWitnessLevel = 12;

void check_witness_level(int n_max) {
  if (n_max < 1) throw std::invalid_argument("witness: n_max must be >= 1");
  if (n_max > kMaxWitnessLevel) {
    throw std::invalid_argument("witness: n_max above dense materialization cap (12)");
  }
}

}  // namespace

CoeffVec witness_lower(double p, int n_max) {
  if (!(p > 1.0) || !(p < 2.0)) throw std::invalid_argument("witness_lower: requires 1 < p < 2");
  check_witness_level(n_max);
  const std::int64_t dim = block_bounds(std::int64_t{1} << n_max).hi;
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const auto b = block_bounds(std::int64_t{1} << n);
    const double value = std::exp2(-static_cast<double>(n) / p);
    for (std::int64_t pos = b.lo; pos <= b.hi; ++pos) {
      e[static_cast<std::size_t>(pos - 1)] = value;
    }
  }
  return CoeffVec(std::move(e));
}

CoeffVec witness_upper(double p, int n_max) {
  if (!(p > 2.0)) throw std::invalid_argument("witness_upper: requires p > 2");
  check_witness_level(n_max);
  const std::int64_t dim = block_bounds(std::int64_t{1} << n_max).hi;
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  std::int64_t j = 0;  // global position counter across the union of blocks
  for (int n = 1; n <= n_max; ++n) {
    const auto b = block_bounds(std::int64_t{1} << n);
    for (std::int64_t pos = b.lo; pos <= b.hi; ++pos) {
      ++j;
      e[static_cast<std::size_t>(pos - 1)] = 1.0 / std::sqrt(static_cast<double>(j));
    }
  }
  return CoeffVec(std::move(e));
}

CoeffVec insert_zeros(const CoeffVec& a, const std::vector<std::int64_t>& phi) {
  if (static_cast<std::int64_t>(phi.size()) != a.dim()) {
    throw std::invalid_argument("insert_zeros: phi must map every index of a");
  }
  std::int64_t prev = 0;
  for (std::int64_t target : phi) {
    if (target <= prev) throw std::invalid_argument("insert_zeros: phi must be strictly increasing");
    prev = target;
  }
  if (phi.back() > (std::int64_t{1} << 27)) {
    throw std::invalid_argument("insert_zeros: result dimension too large");
  }
  std::vector<double> e(static_cast<std::size_t>(phi.back()), 0.0);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    e[static_cast<std::size_t>(phi[k] - 1)] = a.entries()[k];
  }
  return CoeffVec(std::move(e));
}

std::vector<double> partial_sum_norms(const CoeffVec& seq, const SpaceSpec& space,
                                      const std::vector<std::int64_t>& checkpoints) {
  std::int64_t prev = 0;
  for (std::int64_t c : checkpoints) {
    if (c <= prev) throw std::invalid_argument("partial_sum_norms: checkpoints must be increasing");
    if (c > seq.dim()) throw std::invalid_argument("partial_sum_norms: checkpoint beyond dim");
    prev = c;
  }
  std::vector<double> out;
  out.reserve(checkpoints.size());
  for (std::int64_t c : checkpoints) out.push_back(norm_prefix(seq, space, c));
  return out;
}

}  // namespace radbasis
