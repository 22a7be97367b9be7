#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radbasis/rademacher.hpp"
#include "radbasis/table_io.hpp"

namespace radbasis {

struct GrowthRow {
  std::int64_t N = 0;
  double input_norm = 0.0;
  double output_norm = 0.0;
  double ratio = 0.0;
  double stderr_value = 0.0;  // standard error of output_norm; 0 in exact mode
};

/// Growth table certifying blow-up: one row per checkpoint, rows sorted by N,
/// ratio = output/input. Serializes to the fixed CSV schema
/// N,input_norm,output_norm,ratio,stderr (metadata as `#` lines) and to JSON.
struct GrowthTable {
  std::vector<GrowthRow> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  TableDoc to_doc() const;
  void validate() const;
};

/// Summing-basis semigroup on c_0 under the quarter schedule at t = 1,
/// applied to sum_m (s_{2m} - s_{2m-1}) (x) r_m. Input norms are exactly 1;
/// output norms grow ~ sqrt(N).
GrowthTable run_c0_blowup(const std::vector<int>& N_list, const RadNormConfig& cfg);

/// Difference-basis semigroup on l^1 under the half schedule at t = 1,
/// applied to sum_n r_n (x) e_N. Output norms grow ~ N/4 against an input
/// of order sqrt(N).
GrowthTable run_l1_blowup(const std::vector<int>& N_list, const RadNormConfig& cfg);

/// One term of the X^p witness family: coefficient a_m = |S_n|^{-1/2} at
/// m = 2k+1 for k in S_n = {k : 4k+1 in B_{2^n}}. The even side lands at
/// pi(2m) = b_k (one entry per block, convergent for p > 2); the odd side
/// fills B_{2^n} with unit l^2 mass per covered block (divergent).
struct XpWitnessTerm {
  std::int64_t m = 0;         // coefficient index, odd
  std::int64_t k = 0;         // m = 2k+1
  int n = 0;                  // covered block is B_{2^n}
  double value = 0.0;         // |S_n|^{-1/2} = 2^{-(n-2)/2}
  std::int64_t even_pos = 0;  // b_k
  std::int64_t odd_pos = 0;   // 2m-1 = 4k+1
  bool block_end = false;     // last term of its block
};

std::vector<XpWitnessTerm> xp_witness_terms(double p, int n_lo, int n_hi);

/// Dense coefficient vector (indexed by m) of the witness family.
CoeffVec xp_witness_sequence(double p, int n_lo, int n_hi);

/// Closed-form behavior of the even-side partial norms
/// (sum_{n >= n_lo} |S_n|^{1-p/2})^{1/p} with |S_n| = 2^{n-2}.
struct EvenSideSeries {
  double limit = 0.0;        // limit of the partial norms
  int n_at_tol = 0;          // first n where the norm increment drops below tol
  double increment_at_tol = 0.0;
};
EvenSideSeries xp_even_side_series(double p, int n_lo, double tol);

/// Blow-up table for the FPrime multiplier semigroup on X^p (p > 2) under
/// the quarter schedule at t = 1. One row per witness term m: input is the
/// even-side partial norm (bounded), output is exactly
/// (1/4) ||sum_{m' <= m} a_{m'} (e_{pi(2m')} - e_{2m'-1})|| (unbounded).
/// Both columns are deterministic norms — the term supports are disjoint,
/// so the Rademacher average is sign-independent.
GrowthTable run_xp_blowup(double p, int n_lo, int n_hi);

/// Same witness driven through the partial-sum projections: input as above,
/// output ||sum a_m e_{2m-1}|| which equals (#covered blocks)^{1/p} at block
/// ends (uses P_{2m-1} e_{pi(2m)} = -e_{2m-1}).
GrowthTable run_rbasis_witness(double p, int n_lo, int n_hi);

/// Partial-sum norms of the p-witness in both l^p and X^p with one
/// checkpoint per block B_{2^n}, flagging the divergent column.
struct NonequivRow {
  int n = 0;
  std::int64_t checkpoint = 0;
  double lp_pth_power = 0.0;  // sum of |x_k|^p up to the checkpoint
  double lp_norm = 0.0;
  double xp_norm = 0.0;
};
struct NonequivReport {
  double p = 0.0;
  int n_max = 0;
  bool lp_diverges = false;  // true for p < 2; X^p diverges for p > 2
  std::vector<NonequivRow> rows;
  std::vector<std::pair<std::string, std::string>> meta;
  TableDoc to_doc() const;
};
NonequivReport run_nonequivalence(double p, int n_max = 8);

/// Random gap-<=2 zero insertions: checks ||b||^p <= 3 C^p ||a||^p with
/// C = 1 for p <= 2 and C = 3^{1/2 - 1/p} for p > 2.
struct ZeroInsertionReport {
  double p = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int violations = 0;
  double max_ratio = 0.0;  // max over trials of ||b||^p / ||a||^p
  double bound = 0.0;      // 3 C^p
  std::vector<std::pair<std::string, std::string>> meta;
  TableDoc to_doc() const;
};
ZeroInsertionReport run_zero_insertion_check(double p, int trials, std::uint64_t seed);

/// Unconditional-constant estimates for the FPrime basis in X^p (p in (1,2])
/// at several truncation sizes; boundedness shows up as stability across dims.
struct ProbeReport {
  double p = 0.0;
  std::vector<std::pair<std::int64_t, double>> constants;  // (num basis vectors, estimate)
  std::vector<std::pair<std::string, std::string>> meta;
  TableDoc to_doc() const;
};
ProbeReport run_fprime_unconditional_probe(double p, const std::vector<std::int64_t>& dims,
                                           int trials, std::uint64_t seed);

/// Least-squares slope of log(ratio) against log(N). Needs at least two rows
/// with positive N and ratio.
double fit_growth(const GrowthTable& table);

}  // namespace radbasis
