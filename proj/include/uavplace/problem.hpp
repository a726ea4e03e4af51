#pragma once

// Placement problem: scenario, reduction of the UAV position to the vertical
// plane through base station and target, objective and constraint residuals.

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavplace/channel.hpp"
#include "uavplace/errors.hpp"
#include "uavplace/geometry.hpp"

namespace uavplace {

// What fraction of the image is charged to the transmission time.
enum class DelayBasis {
  Requirement,  // the required resolution i_min
  Achieved,     // the resolution achieved at the placement
};

struct Scenario {
  BaseStation bs;
  GroundTarget gt;
  CameraIntrinsics cam;
  CameraConstants consts;
  LinkBudget link;
  double i_min = 0.0;
  double alpha = 1.0;
  BitDepthModel bit_depth = BitDepthModel::Linear;
  DelayBasis delay_basis = DelayBasis::Requirement;

  static Scenario make(const BaseStation& bs, const GroundTarget& gt, const CameraIntrinsics& cam,
                       const LinkBudget& link, double i_min, double alpha) {
    Scenario s;
    s.bs = bs;
    s.gt = gt;
    s.cam = cam;
    s.consts = CameraConstants::from(cam, gt.r0);
    s.link = link;
    s.i_min = i_min;
    s.alpha = alpha;
    s.validate();
    return s;
  }

  void validate() const {
    cam.validate();
    link.validate();
    if (!(gt.r0 > 0.0)) throw InvalidArgument("target radius r0 must be positive");
    if (!(bs.z >= 0.0)) throw InvalidArgument("base station altitude must be non-negative");
    if (!(i_min > 0.0 && i_min < 1.0)) throw InvalidArgument("i_min must lie in (0, 1)");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  }

  // Horizontal target-to-base-station distance.
  double d_gb() const { return (gt.center - bs.w).norm(); }

  double image_bits() const { return image_size_bits(cam, bit_depth); }

  // Right-hand side of the log-domain resolution constraint.
  double log_threshold() const { return std::log(i_min / consts.a); }
};

/// Horizontal coordinate indicator and altitude. eta = 0 is above the target,
/// eta = 1 above the base station.
struct ReducedPoint {
  double eta = 0.0;
  double z = 0.0;
};

inline Placement embed(const ReducedPoint& r, const Scenario& s) {
  return Placement{r.eta * s.bs.w + (1.0 - r.eta) * s.gt.center, r.z};
}

/// Squared UAV-BS distance in reduced coordinates, (1-eta)^2 d_gb^2 + (z-z_b)^2.
/// The rate is decreasing in it.
inline double reduced_objective(const ReducedPoint& r, const Scenario& s) {
  const double horizontal = (1.0 - r.eta) * s.d_gb();
  const double dz = r.z - s.bs.z;
  return horizontal * horizontal + dz * dz;
}

struct ConstraintResiduals {
  double resolution_log = 0.0;  // log-domain resolution margin; -inf past the angle limit
  double angle = 0.0;           // b1 z - eta d_gb [m]
  double containment = 0.0;     // [m^2]
};

namespace detail {

// r0 * max(b1 z + rho, sqrt(b2^2 z^2 + (1 + b2^2) rho^2)): the containment right-hand side.
inline double containment_bound(double rho, double z, const CameraConstants& c, double r0) {
  const double near = c.b1 * z + rho;
  const double side = std::sqrt(c.b2 * c.b2 * z * z + (1.0 + c.b2 * c.b2) * rho * rho);
  return r0 * std::max(near, side);
}

}  // namespace detail

inline ConstraintResiduals residuals(const ReducedPoint& r, const Scenario& s) {
  const auto& c = s.consts;
  const double rho = r.eta * s.d_gb();
  const double z = r.z;
  ConstraintResiduals out;
  const double inner = z * z - rho * rho / (c.b1 * c.b1);
  if (z > 0.0 && inner > 0.0) {
    out.resolution_log = 2.0 * std::log(inner) - 1.5 * std::log(z * z + rho * rho) - 3.0 * std::log(z) -
                         s.log_threshold();
  } else {
    out.resolution_log = -std::numeric_limits<double>::infinity();
  }
  out.angle = c.b1 * z - rho;
  out.containment = z * z + rho * rho - detail::containment_bound(rho, z, c, s.gt.r0);
  return out;
}

/// All constraints of the reduced problem within tol. The angle and
/// containment residuals are compared relative to b1 z and z^2 + rho^2.
inline bool feasible(const ReducedPoint& r, const Scenario& s, double tol) {
  if (!(r.eta >= 0.0 && r.eta <= 1.0) || !(r.z > 0.0)) return false;
  const auto res = residuals(r, s);
  const double rho = r.eta * s.d_gb();
  return res.resolution_log >= -tol && res.angle >= -tol * s.consts.b1 * r.z &&
         res.containment >= -tol * (r.z * r.z + rho * rho);
}

/// f(x) = m1 (m2 - x^2)^2 / (x^2 + m0)^(3/2), decreasing on [0, sqrt(m2)).
/// At fixed altitude z the resolution is f(rho) with m0 = z^2,
/// m1 = a / (z^3 b1^4), m2 = b1^2 z^2.
struct ResolutionProfile {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;

  static ResolutionProfile at_altitude(double z, const CameraConstants& c) {
    const double b1_sq = c.b1 * c.b1;
    return {z * z, c.a / (z * z * z * b1_sq * b1_sq), b1_sq * z * z};
  }

  double value(double x) const {
    const double t = m2 - x * x;
    return m1 * t * t / std::pow(x * x + m0, 1.5);
  }

  double derivative(double x) const {
    const double s = x * x + m0;
    return -m1 * x * (m2 - x * x) * std::sqrt(s) * (x * x + 4.0 * m0 + 3.0 * m2) / (s * s * s);
  }
};

struct Evaluation {
  double resolution = 0.0;
  double rate = 0.0;
  double delay = 0.0;
};

/// Resolution, rate and transmission time at a placement. The data volume
/// follows s.delay_basis.
inline Evaluation evaluate(const Placement& p, const Scenario& s) {
  Evaluation e;
  e.resolution = resolution(p, s.gt, s.consts);
  e.rate = achievable_rate(p, s.bs, s.link);
  const double fraction = s.delay_basis == DelayBasis::Requirement ? s.i_min : e.resolution;
  e.delay = transmission_time(fraction, e.rate, s.image_bits(), s.alpha);
  return e;
}

/// Exact constraints on a 3D placement: capture, resolution >= i_min and
/// containment, with relative tolerance tol on the last two.
inline bool placement_feasible(const Placement& p, const Scenario& s, double tol) {
  if (!(p.z > 0.0) || !capture_feasible(p, s.gt, s.consts)) return false;
  if (resolution(p, s.gt, s.consts) < s.i_min * (1.0 - tol)) return false;
  const auto [d1, d2] = edge_distances(p, s.gt, s.consts);
  return s.gt.r0 <= std::min(d1, d2) * (1.0 + tol);
}

}  // namespace uavplace
