#include "radbasis/semigroup.hpp"

#include <cmath>
#include <stdexcept>

namespace radbasis {

namespace {

// ln(745): e^{-x} underflows to 0 past x ~ 745.13.
const double kLogUnderflowThreshold = std::log(745.0);

}  // namespace

double diag_coeff(std::int64_t m, double t) {
  if (m < 1) throw std::invalid_argument("diag_coeff: m must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("diag_coeff: t must be >= 0");
  if (t == 0.0) return 1.0;
  const double log_x = static_cast<double>(m) * M_LN2 + std::log(t);
  if (log_x > kLogUnderflowThreshold) return 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(t, &exponent);
  if (mantissa == M_LN2) {
    // t = ln2 * 2^{-b} with b = -exponent: result is 2^{-2^{m-b}}.
    return std::exp2(-std::ldexp(1.0, static_cast<int>(m + exponent)));
  }
  return std::exp(-std::ldexp(t, static_cast<int>(m)));
}

CoeffVec apply_T(const MultiplierSemigroup& sg, double t, const CoeffVec& x) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("apply_T: t must be >= 0");
  if (x.dim() > sg.basis.dim()) throw std::invalid_argument("apply_T: vector beyond dimension");
  if (t == 0.0) return x;  // T(0) is the identity
  CoeffVec a = analyze(sg.basis, x);
  std::vector<double> scaled = a.entries();
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    if (scaled[i] != 0.0) scaled[i] *= diag_coeff(static_cast<std::int64_t>(i) + 1, t);
  }
  return synthesize(sg.basis, CoeffVec(std::move(scaled)));
}

double d_eval(std::int64_t m, double t) {
  if (m < 1) throw std::invalid_argument("d_eval: m must be >= 1");
  if (!(t >= 0.0) || !(t <= 1.0)) throw std::invalid_argument("d_eval: t must be in [0, 1]");
  return diag_coeff(m, t) - diag_coeff(m + 1, t);
}

DMax d_max(std::int64_t m) {
  const double t0 = std::ldexp(M_LN2, static_cast<int>(-m));
  return DMax{t0, d_eval(m, t0)};
}

QSchedule QSchedule::geometric_quarter(int length) {
  if (length < 1) throw std::invalid_argument("QSchedule: length must be >= 1");
  QSchedule s;
  s.kind_ = Kind::GeometricQuarter;
  s.values_.reserve(static_cast<std::size_t>(length));
  for (int n = 1; n <= length; ++n) s.values_.push_back(std::ldexp(M_LN2, -(2 * n - 1)));
  return s;
}

QSchedule QSchedule::geometric_half(int length) {
  if (length < 1) throw std::invalid_argument("QSchedule: length must be >= 1");
  QSchedule s;
  s.kind_ = Kind::GeometricHalf;
  s.values_.reserve(static_cast<std::size_t>(length));
  for (int n = 1; n <= length; ++n) s.values_.push_back(std::ldexp(M_LN2, -n));
  return s;
}

QSchedule QSchedule::custom(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("QSchedule: length must be >= 1");
  for (double q : values) {
    if (!(q > 0.0) || !(q < 1.0)) {
      throw std::invalid_argument("QSchedule: values must lie in (0, 1)");
    }
  }
  QSchedule s;
  s.kind_ = Kind::Custom;
  s.values_ = std::move(values);
  return s;
}

double QSchedule::q(int n) const {
  if (n < 1 || n > length()) throw std::invalid_argument("QSchedule::q: index out of range");
  return values_[static_cast<std::size_t>(n - 1)];
}

std::string QSchedule::label() const {
  switch (kind_) {
    case Kind::GeometricQuarter:
      return "quarter";
    case Kind::GeometricHalf:
      return "half";
    case Kind::Custom:
      return "custom";
  }
  return "?";
}

RadElement::RadElement(std::vector<CoeffVec> terms, std::int64_t dim)
    : terms_(std::move(terms)), dim_(dim) {
  if (terms_.empty()) throw std::invalid_argument("RadElement: at least one term required");
  if (dim_ < 1) throw std::invalid_argument("RadElement: dim must be >= 1");
  for (const auto& t : terms_) {
    if (t.dim() > dim_) throw std::invalid_argument("RadElement: term beyond ambient dimension");
  }
}

const CoeffVec& RadElement::term(int n) const {
  if (n < 1 || n > N()) throw std::invalid_argument("RadElement::term: index out of range");
  return terms_[static_cast<std::size_t>(n - 1)];
}

RadElement apply_associated(const MultiplierSemigroup& sg, const QSchedule& q, double t,
                            const RadElement& element) {
  if (!(t >= 0.0)) throw std::invalid_argument("apply_associated: t must be >= 0");
  if (element.N() > q.length()) {
    throw std::invalid_argument("apply_associated: schedule shorter than the element support");
  }
  std::vector<CoeffVec> out;
  out.reserve(static_cast<std::size_t>(element.N()));
  std::int64_t dim = element.dim();
  for (int n = 1; n <= element.N(); ++n) {
    CoeffVec mapped = apply_T(sg, q.q(n) * t, element.term(n));
    dim = std::max(dim, mapped.dim());
    out.push_back(std::move(mapped));
  }
  return RadElement(std::move(out), dim);
}

}  // namespace radbasis
