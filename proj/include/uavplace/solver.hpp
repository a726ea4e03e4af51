#pragma once

// Block coordinate descent over (eta, z) with successive convex approximation
// of the two nonconvex constraints. Each block update solves a one-dimensional
// convex restriction whose feasible set is an interval; its endpoints are found
// by bisection.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "uavplace/bisection.hpp"
#include "uavplace/errors.hpp"
#include "uavplace/problem.hpp"

namespace uavplace {

struct SolverConfig {
  double precision = 1e-4;        // stop when the objective changes by less [m^2]
  int max_iters = 100;
  double bisect_tol = 1e-9;       // relative
  double feasibility_tol = 1e-10;

  void validate() const {
    if (!(precision > 0.0)) throw InvalidArgument("solver: precision must be positive");
    if (max_iters < 1) throw InvalidArgument("solver: max_iters must be at least 1");
    if (!(bisect_tol > 0.0)) throw InvalidArgument("solver: bisect_tol must be positive");
    if (!(feasibility_tol >= 0.0)) throw InvalidArgument("solver: feasibility_tol must be non-negative");
  }
};

enum class SolveStatus { Converged, MaxIters, Infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIters: return "max_iters";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

struct TraceEntry {
  int iteration = 0;
  double eta = 0.0;
  double z = 0.0;
  double objective = 0.0;
};

struct SolveResult {
  ReducedPoint point;
  Placement placement;
  double resolution = std::numeric_limits<double>::quiet_NaN();
  double rate = std::numeric_limits<double>::quiet_NaN();
  double delay = std::numeric_limits<double>::quiet_NaN();
  std::vector<TraceEntry> trace;  // entry 0 is the initial point
  SolveStatus status = SolveStatus::Infeasible;
  int iterations = 0;
};

// Convex restrictions of the resolution and containment constraints, built
// from first-order expansions at a local point. Each equals the exact residual
// at the expansion point and lower-bounds it elsewhere.
namespace sca {

/// Resolution margin in eta at fixed z; -ln(z^2 + eta^2 d^2) linearized in eta^2.
inline double resolution_eta(double eta, double eta_hat, double z, const Scenario& s) {
  const double d = s.d_gb();
  const double rho = eta * d;
  const double rho_hat = eta_hat * d;
  const double b1 = s.consts.b1;
  const double inner = z * z - rho * rho / (b1 * b1);
  if (!(z > 0.0) || !(inner > 0.0)) return -std::numeric_limits<double>::infinity();
  const double anchor = z * z + rho_hat * rho_hat;
  return 2.0 * std::log(inner) - 1.5 * std::log(anchor) - 1.5 * d * d / anchor * (eta * eta - eta_hat * eta_hat) -
         3.0 * std::log(z) - s.log_threshold();
}

/// Containment margin in eta at fixed z; eta^2 replaced by its tangent at eta_hat.
inline double containment_eta(double eta, double eta_hat, double z, const Scenario& s) {
  const double d = s.d_gb();
  const double rho = eta * d;
  const double rho_hat = eta_hat * d;
  return z * z + rho_hat * rho_hat + 2.0 * rho_hat * (rho - rho_hat) -
         detail::containment_bound(rho, z, s.consts, s.gt.r0);
}

/// Resolution margin in z at fixed eta; -ln(z^2 + rho^2) linearized in z^2 and
/// -ln z linearized in z.
inline double resolution_z(double z, double z_hat, double eta, const Scenario& s) {
  const double rho = eta * s.d_gb();
  const double b1 = s.consts.b1;
  const double inner = z * z - rho * rho / (b1 * b1);
  if (!(z > 0.0) || !(inner > 0.0)) return -std::numeric_limits<double>::infinity();
  const double anchor = z_hat * z_hat + rho * rho;
  return 2.0 * std::log(inner) - 1.5 * std::log(anchor) - 1.5 / anchor * (z * z - z_hat * z_hat) -
         3.0 * std::log(z_hat) - 3.0 / z_hat * (z - z_hat) - s.log_threshold();
}

/// Containment margin in z at fixed eta; z^2 replaced by its tangent at z_hat.
inline double containment_z(double z, double z_hat, double eta, const Scenario& s) {
  const double rho = eta * s.d_gb();
  return z_hat * z_hat + 2.0 * z_hat * (z - z_hat) + rho * rho -
         detail::containment_bound(rho, z, s.consts, s.gt.r0);
}

}  // namespace sca

/// Largest eta satisfying the restricted constraints at fixed z, starting from
/// the feasible local point eta_hat. Never returns less than eta_hat.
inline double solve_eta_subproblem(double eta_hat, double z, const Scenario& s, const SolverConfig& cfg) {
  const double d = s.d_gb();
  if (d == 0.0) return eta_hat;
  const double cont_scale = z * z + eta_hat * eta_hat * d * d;
  // The slack only admits the local point; candidates must meet the
  // restriction exactly so rounding cannot accumulate across updates.
  auto within = [&](double eta, double tol) {
    return eta >= 0.0 && eta <= 1.0 && s.consts.b1 * z - eta * d >= 0.0 &&
           sca::resolution_eta(eta, eta_hat, z, s) >= -tol &&
           sca::containment_eta(eta, eta_hat, z, s) >= -tol * cont_scale;
  };
  auto ok = [&](double eta) { return within(eta, 0.0); };
  if (!within(eta_hat, cfg.feasibility_tol)) {
    throw SubproblemInfeasible("eta subproblem: local point eta=" + std::to_string(eta_hat) +
                               " violates the restricted constraints at z=" + std::to_string(z));
  }
  const double hi = std::min(1.0, s.consts.b1 * z / d);
  if (hi <= eta_hat) return eta_hat;
  if (ok(hi)) return hi;
  return bisect_boundary(ok, eta_hat, hi, cfg.bisect_tol);
}

/// Altitude closest to the base station's within the restricted feasible
/// interval around z_hat, at fixed eta.
inline double solve_z_subproblem(double eta, double z_hat, const Scenario& s, const SolverConfig& cfg) {
  const double rho = eta * s.d_gb();
  const double cont_scale = z_hat * z_hat + rho * rho;
  auto within = [&](double z, double tol) {
    return z > 0.0 && s.consts.b1 * z - rho >= 0.0 && sca::resolution_z(z, z_hat, eta, s) >= -tol &&
           sca::containment_z(z, z_hat, eta, s) >= -tol * cont_scale;
  };
  auto ok = [&](double z) { return within(z, 0.0); };
  if (!within(z_hat, cfg.feasibility_tol)) {
    throw SubproblemInfeasible("z subproblem: local point z=" + std::to_string(z_hat) +
                               " violates the restricted constraints at eta=" + std::to_string(eta));
  }
  const double target = s.bs.z;
  if (target == z_hat) return z_hat;
  if (ok(target)) return target;
  // The feasible set is an interval containing z_hat and not the target, so
  // the projection is the endpoint on the target's side.
  const double bad = target > 0.0 ? target : 0.0;
  return bisect_boundary(ok, z_hat, bad, cfg.bisect_tol);
}

namespace detail {

inline void fill_outcome(SolveResult& out, const Scenario& s) {
  out.placement = embed(out.point, s);
  const auto e = evaluate(out.placement, s);
  out.resolution = e.resolution;
  out.rate = e.rate;
  out.delay = e.delay;
}

}  // namespace detail

/// Alternates the eta and z block updates from the vertical point above the
/// target until the objective changes by less than cfg.precision.
///
/// The start is eta = 0, z = max(sqrt(a / i_min), (1 + 1e-6) r0 max(b1, b2));
/// when it violates the resolution constraint no placement is feasible and the
/// status is Infeasible. With the target at the base station's foot only the
/// altitude is optimized.
inline SolveResult bcd_solve(const Scenario& s, const SolverConfig& cfg = {}) {
  cfg.validate();
  const auto& c = s.consts;
  const double containment_floor = s.gt.r0 * std::max(c.b1, c.b2);
  const double resolution_ceiling = std::sqrt(c.a / s.i_min);

  SolveResult out;

  if (s.d_gb() < 1e-9) {
    out.point = {0.0, resolution_ceiling};
    out.trace.push_back({0, 0.0, resolution_ceiling, reduced_objective(out.point, s)});
    if (containment_floor > resolution_ceiling) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    out.point.z = std::clamp(s.bs.z, containment_floor, resolution_ceiling);
    out.iterations = 1;
    out.trace.push_back({1, 0.0, out.point.z, reduced_objective(out.point, s)});
    out.status = SolveStatus::Converged;
    detail::fill_outcome(out, s);
    return out;
  }

  ReducedPoint point{0.0, std::max(resolution_ceiling, (1.0 + 1e-6) * containment_floor)};
  double objective = reduced_objective(point, s);
  out.point = point;
  out.trace.push_back({0, point.eta, point.z, objective});
  if (!feasible(point, s, cfg.feasibility_tol)) {
    out.status = SolveStatus::Infeasible;
    return out;
  }

  out.status = SolveStatus::MaxIters;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    point.eta = solve_eta_subproblem(point.eta, point.z, s, cfg);
    point.z = solve_z_subproblem(point.eta, point.z, s, cfg);
    const double next = reduced_objective(point, s);
    out.trace.push_back({it, point.eta, point.z, next});
    out.iterations = it;
    const bool settled = std::abs(objective - next) < cfg.precision;
    objective = next;
    if (settled) {
      out.status = SolveStatus::Converged;
      break;
    }
  }
  out.point = point;
  detail::fill_outcome(out, s);
  return out;
}

}  // namespace uavplace
