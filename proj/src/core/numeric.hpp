#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace infomeasure {

/// Compensated (Kahan/Neumaier) accumulator.  All simplex sums and measure
/// sums in this library accumulate in index order through one of these, so
/// results are reproducible across platforms at the 1e-12 level.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
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

inline double compensated_total(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

}  // namespace infomeasure
