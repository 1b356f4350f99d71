#pragma once

#include <span>

namespace prsvd {

/// Recursive pairwise sum; error grows as O(log n * eps).
double pairwise_sum(std::span<const double> values);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace prsvd
