#pragma once

// Reference schemes: hovering straight above the target, and brute-force grid
// searches over exact transmission time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uavplace/errors.hpp"
#include "uavplace/problem.hpp"

namespace uavplace {

enum class Scheme { Vertical, ES2D, ES3D };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Vertical: return "vertical";
    case Scheme::ES2D: return "es2d";
    case Scheme::ES3D: return "es3d";
  }
  return "unknown";
}

struct BaselineResult {
  Scheme scheme = Scheme::Vertical;
  Placement placement;
  double eta = 0.0;  // position along the target-to-base-station segment
  double resolution = 0.0;
  double rate = 0.0;
  double delay = 0.0;
  std::int64_t evaluations = 0;
};

// Relative slack on the resolution and containment checks of grid nodes.
inline constexpr double kGridFeasibilityTol = 1e-12;

/// Hover above the target at the altitude where the resolution equals i_min.
/// Throws Infeasible when that altitude is below the containment floor
/// r0 max(b1, b2).
inline BaselineResult vertical_baseline(const Scenario& s) {
  const auto& c = s.consts;
  const double z = std::sqrt(c.a / s.i_min);
  const double floor = s.gt.r0 * std::max(c.b1, c.b2);
  if (z < floor) {
    throw Infeasible("vertical scheme: altitude " + std::to_string(z) + " m for i_min=" +
                     std::to_string(s.i_min) + " is below the containment floor " + std::to_string(floor) + " m");
  }
  BaselineResult r;
  r.scheme = Scheme::Vertical;
  r.placement = Placement{s.gt.center, z};
  const auto e = evaluate(r.placement, s);
  r.resolution = e.resolution;
  r.rate = e.rate;
  r.delay = e.delay;
  r.evaluations = 1;
  return r;
}

/// 1.5 max(sqrt(a / i_min), r0 max(b1, b2)); always above the vertical altitude.
inline double default_z_max(const Scenario& s) {
  const auto& c = s.consts;
  return 1.5 * std::max(std::sqrt(c.a / s.i_min), s.gt.r0 * std::max(c.b1, c.b2));
}

inline double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len_sq = ab.squaredNorm();
  if (len_sq == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

namespace detail {

struct GridBest {
  std::optional<BaselineResult> best;
  std::int64_t evaluations = 0;

  // Strict improvement only, so the first node visited wins a tie.
  void offer(const Placement& p, double eta, const Scenario& s, Scheme scheme) {
    ++evaluations;
    if (!placement_feasible(p, s, kGridFeasibilityTol)) return;
    if (uav_bs_distance_sq(p, s.bs) == 0.0) return;  // rate undefined on the antenna itself
    const auto e = evaluate(p, s);
    if (best && !(e.delay < best->delay)) return;
    best = BaselineResult{scheme, p, eta, e.resolution, e.rate, e.delay, 0};
  }

  BaselineResult finish(const char* what) {
    if (!best) throw Infeasible(std::string(what) + ": no feasible grid node");
    best->evaluations = evaluations;
    return *best;
  }
};

inline std::int64_t grid_count(double extent, double step) {
  return static_cast<std::int64_t>(std::floor(extent / step + 1e-9));
}

inline void check_grid(double step, double z_max) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  if (!(z_max > 0.0)) throw InvalidArgument("grid z_max must be positive");
}

}  // namespace detail

/// Grid over the vertical plane through target and base station:
/// eta d_gb in {0, step, ..., d_gb} and z in {step, 2 step, ..., z_max}.
/// Ties go to the lowest z, then the lowest eta.
inline BaselineResult exhaustive_search_2d(const Scenario& s, double step, std::optional<double> z_max = {}) {
  const double top = z_max.value_or(default_z_max(s));
  detail::check_grid(step, top);
  const double d = s.d_gb();

  std::vector<double> etas;
  if (d > 0.0) {
    const auto n = detail::grid_count(d, step);
    for (std::int64_t k = 0; k <= n; ++k) etas.push_back(std::min(1.0, static_cast<double>(k) * step / d));
    if (etas.back() < 1.0) etas.push_back(1.0);
  } else {
    etas.push_back(0.0);
  }

  detail::GridBest grid;
  const auto nz = detail::grid_count(top, step);
  for (std::int64_t j = 1; j <= nz; ++j) {
    const double z = static_cast<double>(j) * step;
    for (double eta : etas) grid.offer(embed({eta, z}, s), eta, s, Scheme::ES2D);
  }
  return grid.finish("2D exhaustive search");
}

/// Full (x, y, z) grid over the bounding box of base station and target grown
/// by z_max on every side. Ties go to the lowest z, then x, then y.
inline BaselineResult exhaustive_search_3d(const Scenario& s, double step, std::optional<double> z_max = {}) {
  const double top = z_max.value_or(default_z_max(s));
  detail::check_grid(step, top);
  const Vec2 lo = s.bs.w.cwiseMin(s.gt.center).array() - top;
  const Vec2 hi = s.bs.w.cwiseMax(s.gt.center).array() + top;
  const auto nx = detail::grid_count(hi.x() - lo.x(), step);
  const auto ny = detail::grid_count(hi.y() - lo.y(), step);
  const auto nz = detail::grid_count(top, step);
  const Vec2 axis = s.bs.w - s.gt.center;
  const double d_sq = axis.squaredNorm();

  detail::GridBest grid;
  for (std::int64_t k = 1; k <= nz; ++k) {
    const double z = static_cast<double>(k) * step;
    for (std::int64_t i = 0; i <= nx; ++i) {
      const double x = lo.x() + static_cast<double>(i) * step;
      for (std::int64_t j = 0; j <= ny; ++j) {
        const Placement p{Vec2(x, lo.y() + static_cast<double>(j) * step), z};
        const double eta = d_sq > 0.0 ? std::clamp((p.q - s.gt.center).dot(axis) / d_sq, 0.0, 1.0) : 0.0;
        grid.offer(p, eta, s, Scheme::ES3D);
      }
    }
  }
  return grid.finish("3D exhaustive search");
}

}  // namespace uavplace
