#pragma once

#include <cmath>

namespace radbasis {

/// Neumaier-compensated running sum.
///
/// All norm and average accumulations in this library feed terms to a
/// CompensatedSum in a fixed, documented order (ascending index unless a
/// function states otherwise). Adding an exact 0.0 leaves the state
/// bit-identical, so skipping zero terms is equivalent to adding them.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace radbasis
