#pragma once

#include <cmath>

namespace hybridnoise::detail {

// Neumaier variant of Kahan summation. Sums of thousands of Poisson weights
// must hold ~1e-12 invariants; naive accumulation does not.
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

  // (x - sum) - comp, keeping the correction term out of the cancellation.
  // Used for tail masses of the form 1 - sum(w_i).
  double subtracted_from(double x) const { return (x - sum_) - comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hybridnoise::detail
