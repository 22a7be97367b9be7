#include "radbasis/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radbasis/bases.hpp"
#include "radbasis/compensated.hpp"
#include "radbasis/rng.hpp"
#include "radbasis/version.hpp"

namespace radbasis {

namespace {

void check_n_list(const std::vector<int>& N_list) {
  if (N_list.empty()) throw std::invalid_argument("experiment: empty N list");
  int prev = 0;
  for (int n : N_list) {
    if (n <= prev) throw std::invalid_argument("experiment: N list must be increasing and >= 1");
    prev = n;
  }
}

void append_cfg_meta(std::vector<std::pair<std::string, std::string>>& meta,
                     const RadNormConfig& cfg) {
  meta.emplace_back("mode", cfg.mode == RadNormConfig::Mode::Exact ? "exact" : "mc");
  meta.emplace_back("exponent", format_double(cfg.exponent));
  meta.emplace_back("samples", std::to_string(cfg.samples));
  meta.emplace_back("seed", std::to_string(cfg.seed));
  meta.emplace_back("version", kVersion);
}

void insert_sorted(std::vector<SparseEntry>& entries, SparseEntry e) {
  const auto it = std::lower_bound(entries.begin(), entries.end(), e.first,
                                   [](const SparseEntry& a, std::int64_t pos) { return a.first < pos; });
  entries.insert(it, e);
}

}  // namespace

TableDoc GrowthTable::to_doc() const {
  TableDoc doc;
  doc.meta = meta;
  doc.columns = {"N", "input_norm", "output_norm", "ratio", "stderr"};
  doc.rows.reserve(rows.size());
  for (const auto& r : rows) {
    doc.rows.push_back(
        {static_cast<double>(r.N), r.input_norm, r.output_norm, r.ratio, r.stderr_value});
  }
  return doc;
}

void GrowthTable::validate() const {
  std::int64_t prev = 0;
  for (const auto& r : rows) {
    if (r.N <= prev) throw std::logic_error("GrowthTable: rows must be sorted by N");
    prev = r.N;
    if (r.input_norm > 0.0 && std::abs(r.ratio - r.output_norm / r.input_norm) >
                                  1e-12 * std::max(1.0, std::abs(r.ratio))) {
      throw std::logic_error("GrowthTable: ratio column inconsistent");
    }
  }
}

GrowthTable run_c0_blowup(const std::vector<int>& N_list, const RadNormConfig& cfg) {
  check_n_list(N_list);
  GrowthTable t;
  t.meta = {{"experiment", "c0-blowup"}, {"space", "c0"}, {"basis", "summing"},
            {"schedule", "quarter"}};
  append_cfg_meta(t.meta, cfg);
  const SpaceSpec c0 = SpaceSpec::sup_c0();
  for (int N : N_list) {
    const std::int64_t dim = 2 * static_cast<std::int64_t>(N);
    std::vector<CoeffVec> terms;
    terms.reserve(static_cast<std::size_t>(N));
    // s_{2m} - s_{2m-1} = e_{2m} in standard coordinates.
    for (int m = 1; m <= N; ++m) terms.push_back(CoeffVec::unit(dim, 2 * m));
    const RadElement x(std::move(terms), dim);
    const auto in = rad_norm(x, c0, cfg);
    const MultiplierSemigroup sg{BasisMap::summing(dim)};
    const RadElement image = apply_associated(sg, QSchedule::geometric_quarter(N), 1.0, x);
    const auto out = rad_norm(image, c0, cfg);
    t.rows.push_back({N, in.value, out.value, out.value / in.value, out.stderr_value});
  }
  t.validate();
  return t;
}

GrowthTable run_l1_blowup(const std::vector<int>& N_list, const RadNormConfig& cfg) {
  check_n_list(N_list);
  GrowthTable t;
  t.meta = {{"experiment", "l1-blowup"}, {"space", "l^1"}, {"basis", "difference"},
            {"schedule", "half"}};
  append_cfg_meta(t.meta, cfg);
  const SpaceSpec l1 = SpaceSpec::lp(1.0);
  std::string intermediate;
  for (int N : N_list) {
    const std::int64_t dim = N;
    // sum_{m<=N} f_m telescopes to e_N; the element is sum_n r_n (x) e_N.
    std::vector<CoeffVec> terms(static_cast<std::size_t>(N), CoeffVec::unit(dim, N));
    const RadElement x(std::move(terms), dim);
    const auto in = rad_norm(x, l1, cfg);
    const MultiplierSemigroup sg{BasisMap::difference(dim)};
    const QSchedule q = QSchedule::geometric_half(N);
    const RadElement image = apply_associated(sg, q, 1.0, x);
    const auto out = rad_norm(image, l1, cfg);
    t.rows.push_back({N, in.value, out.value, out.value / in.value, out.stderr_value});

    // The proof-side lower bound: sum_{m<N} E|sum_n (e^{-2^m q_n} - e^{-2^{m+1} q_n}) r_n|.
    CompensatedSum lower;
    for (int m = 1; m <= N - 1; ++m) {
      std::vector<double> d(static_cast<std::size_t>(N), 0.0);
      for (int n = 1; n <= N; ++n) {
        d[static_cast<std::size_t>(n - 1)] = diag_coeff(m, q.q(n)) - diag_coeff(m + 1, q.q(n));
      }
      lower.add(rademacher_abs_mean(d, cfg).value);
    }
    if (!intermediate.empty()) intermediate += " ";
    intermediate += std::to_string(N) + ":" + format_double(lower.value());
  }
  t.meta.emplace_back("proof_intermediate_sum", intermediate);
  t.validate();
  return t;
}

std::vector<XpWitnessTerm> xp_witness_terms(double p, int n_lo, int n_hi) {
  if (!(p > 2.0)) throw std::invalid_argument("xp witness: requires p > 2");
  if (n_lo > n_hi || n_hi > 20) throw std::invalid_argument("xp witness: bad block range");
  std::vector<XpWitnessTerm> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const auto blk = block_bounds(std::int64_t{1} << n);
    const std::int64_t k_lo = (blk.lo - 1 + 3) / 4;
    const std::int64_t k_hi = (blk.hi - 1) / 4;
    if (k_lo < 1 || k_lo > k_hi) {
      throw std::invalid_argument("xp witness: S_n empty in range (need n >= 2)");
    }
    const double value = std::exp2(-static_cast<double>(n - 2) / 2.0);  // |S_n|^{-1/2}
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      out.push_back(XpWitnessTerm{2 * k + 1, k, n, value, b_value(k), 4 * k + 1, k == k_hi});
    }
  }
  return out;
}

CoeffVec xp_witness_sequence(double p, int n_lo, int n_hi) {
  const auto terms = xp_witness_terms(p, n_lo, n_hi);
  std::vector<double> a(static_cast<std::size_t>(terms.back().m), 0.0);
  for (const auto& t : terms) a[static_cast<std::size_t>(t.m - 1)] = t.value;
  return CoeffVec(std::move(a));
}

EvenSideSeries xp_even_side_series(double p, int n_lo, double tol) {
  if (!(p > 2.0)) throw std::invalid_argument("xp witness: requires p > 2");
  if (n_lo < 2) throw std::invalid_argument("xp witness: need n >= 2");
  EvenSideSeries s;
  CompensatedSum pth_power;
  double prev = 0.0;
  for (int n = n_lo; n < n_lo + 200000; ++n) {
    // |S_n|^{1 - p/2} with |S_n| = 2^{n-2}
    const double term = std::exp2(static_cast<double>(n - 2) * (1.0 - p / 2.0));
    pth_power.add(term);
    const double v = std::pow(pth_power.value(), 1.0 / p);
    const double inc = v - prev;
    if (s.n_at_tol == 0 && n > n_lo && inc < tol) {
      s.n_at_tol = n;
      s.increment_at_tol = inc;
    }
    if (n > n_lo && inc < 1e-16 * v) {
      s.limit = v;
      return s;
    }
    prev = v;
  }
  throw std::runtime_error("xp_even_side_series: series did not settle");
}

namespace {

GrowthTable xp_table(double p, int n_lo, int n_hi, bool project_output) {
  const auto terms = xp_witness_terms(p, n_lo, n_hi);
  const SpaceSpec xp = SpaceSpec::block_xp(p);
  GrowthTable t;
  t.meta = {{"experiment", project_output ? "rbasis" : "xp-blowup"},
            {"space", xp.label()},
            {"basis", "fprime"},
            {"schedule", "quarter"},
            {"p", format_double(p)},
            {"n_lo", std::to_string(n_lo)},
            {"n_hi", std::to_string(n_hi)},
            {"mode", "exact"},
            {"exponent", "1"},
            {"samples", "0"},
            {"seed", "0"},
            {"version", kVersion}};
  std::vector<SparseEntry> evens;
  std::vector<SparseEntry> output_entries;
  evens.reserve(terms.size());
  for (const auto& term : terms) {
    evens.push_back({term.even_pos, term.value});
    if (project_output) {
      output_entries.push_back({term.odd_pos, term.value});
    } else {
      insert_sorted(output_entries, {term.even_pos, term.value});
      insert_sorted(output_entries, {term.odd_pos, -term.value});
    }
    const double in = sparse_norm(evens, xp);
    double out = sparse_norm(output_entries, xp);
    if (!project_output) out *= 0.25;
    t.rows.push_back({term.m, in, out, out / in, 0.0});
  }
  t.validate();
  return t;
}

}  // namespace

GrowthTable run_xp_blowup(double p, int n_lo, int n_hi) { return xp_table(p, n_lo, n_hi, false); }

GrowthTable run_rbasis_witness(double p, int n_lo, int n_hi) {
  return xp_table(p, n_lo, n_hi, true);
}

TableDoc NonequivReport::to_doc() const {
  TableDoc doc;
  doc.meta = meta;
  doc.columns = {"n", "checkpoint", "lp_pth_power", "lp_norm", "xp_norm"};
  for (const auto& r : rows) {
    doc.rows.push_back({static_cast<double>(r.n), static_cast<double>(r.checkpoint),
                        r.lp_pth_power, r.lp_norm, r.xp_norm});
  }
  return doc;
}

NonequivReport run_nonequivalence(double p, int n_max) {
  if (p == 2.0) {
    throw std::invalid_argument("run_nonequivalence: at p = 2 the bases are equivalent");
  }
  if (!(p > 1.0)) throw std::invalid_argument("run_nonequivalence: requires p > 1");
  NonequivReport rep;
  rep.p = p;
  rep.n_max = n_max;
  rep.lp_diverges = p < 2.0;
  const CoeffVec w = (p < 2.0) ? witness_lower(p, n_max) : witness_upper(p, n_max);
  std::vector<std::int64_t> checkpoints;
  for (int n = 1; n <= n_max; ++n) checkpoints.push_back(block_bounds(std::int64_t{1} << n).hi);
  const auto lp_norms = partial_sum_norms(w, SpaceSpec::lp(p), checkpoints);
  const auto xp_norms = partial_sum_norms(w, SpaceSpec::block_xp(p), checkpoints);

  // Running sum of |x_k|^p with snapshots at the checkpoints.
  CompensatedSum pth;
  std::vector<double> pth_at(checkpoints.size(), 0.0);
  std::size_t next = 0;
  for (std::int64_t pos = 1; pos <= w.dim() && next < checkpoints.size(); ++pos) {
    const double x = w.at(pos);
    if (x != 0.0) pth.add(std::pow(std::abs(x), p));
    if (pos == checkpoints[next]) pth_at[next++] = pth.value();
  }
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    rep.rows.push_back(NonequivRow{static_cast<int>(i) + 1, checkpoints[i], pth_at[i],
                                   lp_norms[i], xp_norms[i]});
  }
  rep.meta = {{"experiment", "nonequiv"},
              {"p", format_double(p)},
              {"n_max", std::to_string(n_max)},
              {"witness", p < 2.0 ? "lower" : "upper"},
              {"diverges", p < 2.0 ? "lp" : "Xp"},
              {"version", kVersion}};
  return rep;
}

TableDoc ZeroInsertionReport::to_doc() const {
  TableDoc doc;
  doc.meta = meta;
  doc.columns = {"trials", "violations", "max_ratio", "bound"};
  doc.rows = {{static_cast<double>(trials), static_cast<double>(violations), max_ratio, bound}};
  return doc;
}

ZeroInsertionReport run_zero_insertion_check(double p, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("run_zero_insertion_check: trials must be >= 1");
  const SpaceSpec xp = SpaceSpec::block_xp(p);
  ZeroInsertionReport rep;
  rep.p = p;
  rep.trials = trials;
  rep.seed = seed;
  const double c = (p <= 2.0) ? 1.0 : std::pow(3.0, 0.5 - 1.0 / p);
  rep.bound = 3.0 * std::pow(c, p);
  SplitMix64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t len = 1 + static_cast<std::size_t>(rng.next_below(40));
    std::vector<double> a(len, 0.0);
    bool nonzero = false;
    for (auto& v : a) {
      if ((rng.next() & 3) != 0) {  // 3/4 dense, 1/4 zeros
        v = rng.next_symmetric();
        nonzero = nonzero || v != 0.0;
      }
    }
    if (!nonzero) a[0] = 1.0;
    std::vector<std::int64_t> phi(len, 0);
    std::int64_t pos = 0;
    for (auto& target : phi) {
      pos += 1 + static_cast<std::int64_t>(rng.next() & 1);  // gaps of 1 or 2
      target = pos;
    }
    const CoeffVec av(a);
    const CoeffVec bv = insert_zeros(av, phi);
    const double na = norm(av, xp);
    const double nb = norm(bv, xp);
    const double ratio = std::pow(nb, p) / std::pow(na, p);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > rep.bound) ++rep.violations;
  }
  rep.meta = {{"experiment", "zero-insertion"}, {"p", format_double(p)},
              {"trials", std::to_string(trials)}, {"seed", std::to_string(seed)},
              {"version", kVersion}};
  return rep;
}

TableDoc ProbeReport::to_doc() const {
  TableDoc doc;
  doc.meta = meta;
  doc.columns = {"dim", "constant_lb"};
  for (const auto& [dim, value] : constants) {
    doc.rows.push_back({static_cast<double>(dim), value});
  }
  return doc;
}

ProbeReport run_fprime_unconditional_probe(double p, const std::vector<std::int64_t>& dims,
                                           int trials, std::uint64_t seed) {
  if (!(p > 1.0) || !(p <= 2.0)) {
    throw std::invalid_argument("run_fprime_unconditional_probe: requires p in (1, 2]");
  }
  if (dims.empty()) throw std::invalid_argument("run_fprime_unconditional_probe: no dims");
  ProbeReport rep;
  rep.p = p;
  const SpaceSpec xp = SpaceSpec::block_xp(p);
  for (std::int64_t m : dims) {
    if (m < 2 || m % 2 != 0) {
      throw std::invalid_argument("run_fprime_unconditional_probe: dims must be even and >= 2");
    }
    const BasisMap basis = BasisMap::fprime(make_permutation_pi(m / 2));
    rep.constants.emplace_back(m, unconditional_constant_lb(basis, xp, trials, seed));
  }
  rep.meta = {{"experiment", "fprime-probe"}, {"p", format_double(p)},
              {"trials", std::to_string(trials)}, {"seed", std::to_string(seed)},
              {"version", kVersion}};
  return rep;
}

double fit_growth(const GrowthTable& table) {
  if (table.rows.size() < 2) throw std::invalid_argument("fit_growth: need at least two rows");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(table.rows.size());
  for (const auto& r : table.rows) {
    if (!(r.ratio > 0.0)) throw std::invalid_argument("fit_growth: ratios must be positive");
    if (r.N < 1) throw std::invalid_argument("fit_growth: N must be positive");
    const double x = std::log(static_cast<double>(r.N));
    const double y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_growth: degenerate N values");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace radbasis
