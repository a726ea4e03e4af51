#pragma once

#include <algorithm>
#include <cmath>

namespace uavplace {

/// Boundary of a convex (interval) feasible set along one axis.
///
/// `good` must satisfy `pred`, `bad` must not; both may lie on either side of
/// each other. Returns a feasible point within rel_tol * max(|good|, |bad|) of
/// the boundary.
template <typename Predicate>
double bisect_boundary(Predicate&& pred, double good, double bad, double rel_tol, int max_steps = 200) {
  for (int i = 0; i < max_steps; ++i) {
    const double scale = std::max({std::abs(good), std::abs(bad), 1e-300});
    if (std::abs(bad - good) <= rel_tol * scale) break;
    const double mid = 0.5 * (good + bad);
    if (mid == good || mid == bad) break;
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace uavplace
