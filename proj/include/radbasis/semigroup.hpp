#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radbasis/bases.hpp"
#include "radbasis/coeffvec.hpp"

namespace radbasis {

/// Diagonal coefficient e^{-2^m t} of the multiplier semigroup (t >= 0).
///
/// When t is of the dyadic-log form ln2 * 2^{-b} the value is computed as
/// 2^{-2^{m-b}} through the base-2 exponential, so the constants 1/2 and 1/4
/// that the experiments rely on come out exact. Exponents past the double
/// underflow threshold (2^m t > 745) return exactly 0; the comparison is done
/// in log scale so the intermediate 2^m is never materialized.
double diag_coeff(std::int64_t m, double t);

/// Multiplier semigroup T(t) acting diagonally in the given basis with the
/// hard-wired exponent sequence gamma_m = 2^m.
struct MultiplierSemigroup {
  BasisMap basis;
};

/// analyze x in the basis, scale coordinate m by diag_coeff(m, t), synthesize.
CoeffVec apply_T(const MultiplierSemigroup& sg, double t, const CoeffVec& x);

/// d(t) = e^{-2^m t} - e^{-2^{m+1} t} on [0, 1].
double d_eval(std::int64_t m, double t);

struct DMax {
  double t0;     // ln2 / 2^m
  double value;  // d(t0), equal to 1/4 for every m
};
DMax d_max(std::int64_t m);

/// Time-dilation schedule (q_n) in (0,1). The dyadic kinds store q_n as
/// ln2 * 2^{-e(n)} with e(n) = 2n-1 (quarter: successive q ratio 1/4) or
/// e(n) = n (half), so products q_n * 1 keep the dyadic-log form that
/// diag_coeff evaluates exactly.
class QSchedule {
 public:
  enum class Kind { GeometricQuarter, GeometricHalf, Custom };

  static QSchedule geometric_quarter(int length);
  static QSchedule geometric_half(int length);
  static QSchedule custom(std::vector<double> values);

  Kind kind() const { return kind_; }
  int length() const { return static_cast<int>(values_.size()); }
  /// q_n, 1-based.
  double q(int n) const;
  std::string label() const;

 private:
  Kind kind_ = Kind::Custom;
  std::vector<double> values_;
};

/// Finitely supported Rademacher sum sum_n r_n (x) x_n; all terms share one
/// ambient dimension.
class RadElement {
 public:
  RadElement(std::vector<CoeffVec> terms, std::int64_t dim);

  /// Support bound N (terms are indexed 1..N).
  int N() const { return static_cast<int>(terms_.size()); }
  std::int64_t dim() const { return dim_; }
  const CoeffVec& term(int n) const;
  const std::vector<CoeffVec>& terms() const { return terms_; }

 private:
  std::vector<CoeffVec> terms_;
  std::int64_t dim_;
};

/// Associated-semigroup action at time t: term n becomes T(q_n * t) x_n.
RadElement apply_associated(const MultiplierSemigroup& sg, const QSchedule& q, double t,
                            const RadElement& element);

}  // namespace radbasis
