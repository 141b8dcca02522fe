#pragma once

#include <algorithm>
#include <cstdint>

namespace ebcs {

/// Confidence interval at time t. `halfwidth` is the unclipped W; lo/hi are
/// clipped to [0, 1]. When `valid` is false the method gives no guarantee at t
/// and lo/hi are the vacuous [0, 1].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  std::int64_t t = 0;
  bool valid = false;
  double center = 0.5;
  double halfwidth = 0.5;

  bool contains(double m) const { return lo <= m && m <= hi; }

  static Interval centered(double center, double halfwidth, std::int64_t t, bool valid = true) {
    if (!valid) return vacuous(t, center, halfwidth);
    return {std::max(0.0, center - halfwidth), std::min(1.0, center + halfwidth), t, true, center, halfwidth};
  }

  static Interval vacuous(std::int64_t t, double center = 0.5, double halfwidth = 0.5) {
    return {0.0, 1.0, t, false, center, halfwidth};
  }
};

}  // namespace ebcs
