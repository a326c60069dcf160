#pragma once

#include <cmath>

namespace polyvol {

/// Neumaier's variant of Kahan summation; also correct when an addend is
/// larger in magnitude than the running sum.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double t = sum + value;
    if (std::fabs(sum) >= std::fabs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum + compensation; }
};

}  // namespace polyvol
