#pragma once

// Oblique-photography model of a gimballed pinhole camera looking at a
// circular ground target.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "uavplace/errors.hpp"

namespace uavplace {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct CameraIntrinsics {
  double f0 = 0.0;      // focal length [m]
  double w0 = 0.0;      // image-plane width [m], lies in the tilt plane
  double l0 = 0.0;      // image-plane length [m]
  double delta0 = 0.0;  // pixel pitch [m]
  int bits_per_pixel = 24;

  void validate() const {
    if (!(f0 > 0.0) || !(w0 > 0.0) || !(l0 > 0.0) || !(delta0 > 0.0)) {
      throw InvalidArgument("camera: f0, w0, l0 and delta0 must be positive");
    }
    if (bits_per_pixel <= 0) throw InvalidArgument("camera: bits_per_pixel must be positive");
  }
};

struct GroundTarget {
  Vec2 center = Vec2::Zero();
  double r0 = 0.0;  // radius [m]; the target lies in the z = 0 plane
};

struct Placement {
  Vec2 q = Vec2::Zero();  // horizontal position [m]
  double z = 0.0;         // altitude [m]
};

/// Constants derived from the camera and the target radius.
///
///   b1 = 2 f0 / w0,  b2 = 2 f0 / l0,  a = b1 b2 pi r0^2 / 4,  theta0 = atan(b1)
///
/// theta0 is the largest usable oblique angle: at theta0 the far edge of the
/// field of view becomes parallel to the ground.
struct CameraConstants {
  double b1 = 0.0;
  double b2 = 0.0;
  double a = 0.0;
  double theta0 = 0.0;

  static CameraConstants from(const CameraIntrinsics& cam, double r0) {
    cam.validate();
    if (!(r0 > 0.0)) throw InvalidArgument("target radius r0 must be positive");
    CameraConstants c;
    c.b1 = 2.0 * cam.f0 / cam.w0;
    c.b2 = 2.0 * cam.f0 / cam.l0;
    c.a = c.b1 * c.b2 * std::numbers::pi * r0 * r0 / 4.0;
    c.theta0 = std::atan(c.b1);
    return c;
  }
};

struct EdgeDistances {
  double d1 = 0.0;  // target centre to the near edge of the footprint
  double d2 = 0.0;  // target centre to a lateral edge
};

/// Ground footprint of the image rectangle.
///
/// Corners run counter-clockwise seen from above: A and D lie on the edge
/// nearest the UAV, B and C on the far edge. DA is the near edge and AB a
/// lateral edge.
struct Footprint {
  std::array<Vec2, 4> corners;
  double area = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Horizontal distance between the UAV and the target centre.
inline double ground_offset(const Placement& p, const GroundTarget& g) {
  return (p.q - g.center).norm();
}

inline double slant_distance(const Placement& p, const GroundTarget& g) {
  return std::hypot(ground_offset(p, g), p.z);
}

inline double oblique_angle(const Placement& p, const GroundTarget& g) {
  return std::atan2(ground_offset(p, g), p.z);
}

namespace detail {

// Capture margin below which the oblique angle counts as the angle limit.
inline double angle_margin(double z) { return 1e-9 * z; }

inline bool strictly_capturable(double rho, double z, double b1) {
  return z > 0.0 && b1 * z - rho >= angle_margin(z);
}

inline void require_capturable(double rho, double z, double b1) {
  if (!strictly_capturable(rho, z, b1)) {
    throw AngleLimit("oblique angle at or beyond the camera angle limit (rho=" +
                     std::to_string(rho) + ", z=" + std::to_string(z) + ")");
  }
}

inline double point_line_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  const Vec2 r = p - a;
  return std::abs(e.x() * r.y() - e.y() * r.x()) / e.norm();
}

}  // namespace detail

/// Whether the target centre can be imaged at the image centre: b1 z - rho > 0.
/// The boundary (theta = theta0) is excluded with a margin of 1e-9 z.
inline bool capture_feasible(const Placement& p, const GroundTarget& g, const CameraConstants& c) {
  return detail::strictly_capturable(ground_offset(p, g), p.z, c.b1);
}

/// Ground area covered by the image; S_v phi(theta) with S_v = w0 l0 z^2 / f0^2.
inline double coverage_area(const Placement& p, const GroundTarget& g, const CameraIntrinsics& cam) {
  const double rho = ground_offset(p, g);
  detail::require_capturable(rho, p.z, 2.0 * cam.f0 / cam.w0);
  const double tan_theta = rho / p.z;
  const double cos_theta = p.z / std::hypot(rho, p.z);
  const double vertical = cam.w0 * cam.l0 * p.z * p.z / (cam.f0 * cam.f0);
  const double shrink = 1.0 - cam.w0 * cam.w0 / (4.0 * cam.f0 * cam.f0) * tan_theta * tan_theta;
  return vertical / (shrink * shrink * cos_theta * cos_theta * cos_theta);
}

/// Target area over coverage area:
///   I = a (z^2 - rho^2/b1^2)^2 / ((rho^2 + z^2)^(3/2) z^3)
inline double resolution(const Placement& p, const GroundTarget& g, const CameraConstants& c) {
  const double rho = ground_offset(p, g);
  detail::require_capturable(rho, p.z, c.b1);
  const double z = p.z;
  const double inner = z * z - rho * rho / (c.b1 * c.b1);
  const double slant_sq = rho * rho + z * z;
  return c.a * inner * inner / (slant_sq * std::sqrt(slant_sq) * z * z * z);
}

inline EdgeDistances edge_distances(const Placement& p, const GroundTarget& g, const CameraConstants& c) {
  const double rho = ground_offset(p, g);
  detail::require_capturable(rho, p.z, c.b1);
  const double z = p.z;
  const double num = z * z + rho * rho;
  return {num / (c.b1 * z + rho),
          num / std::sqrt(c.b2 * c.b2 * z * z + (1.0 + c.b2 * c.b2) * rho * rho)};
}

/// Whether the whole target disc lies inside the footprint: r0 <= min(d1, d2) + tol.
inline bool containment_ok(const Placement& p, const GroundTarget& g, const CameraConstants& c,
                           double tol = 0.0) {
  const auto [d1, d2] = edge_distances(p, g, c);
  return g.r0 <= std::min(d1, d2) + tol;
}

/// Footprint by direct projection of the four image corners through the focal
/// point onto the ground, with the boresight aimed at the target centre and the
/// image width axis in the vertical plane through UAV and target.
///
/// Independent of the closed forms above; used to check them.
inline Footprint footprint_oracle(const Placement& p, const GroundTarget& g, const CameraIntrinsics& cam) {
  cam.validate();
  const double rho = ground_offset(p, g);
  detail::require_capturable(rho, p.z, 2.0 * cam.f0 / cam.w0);

  const Vec3 eye(p.q.x(), p.q.y(), p.z);
  const Vec3 target(g.center.x(), g.center.y(), 0.0);
  const Vec3 forward = (target - eye).normalized();

  // Horizontal direction from the UAV towards the target; +x when overhead.
  Vec2 toward = rho > 0.0 ? Vec2((g.center - p.q) / rho) : Vec2(1.0, 0.0);
  const Vec3 tilt(toward.x(), toward.y(), 0.0);
  const Vec3 lateral(-toward.y(), toward.x(), 0.0);
  const Vec3 far = (tilt - tilt.dot(forward) * forward).normalized();

  const double hw = 0.5 * cam.w0;
  const double hl = 0.5 * cam.l0;
  const std::array<std::array<double, 2>, 4> signs{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};

  Footprint fp;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec3 ray = cam.f0 * forward + signs[i][0] * hw * far + signs[i][1] * hl * lateral;
    if (!(ray.z() < 0.0)) throw AngleLimit("footprint corner ray does not reach the ground");
    const Vec3 hit = eye + (-p.z / ray.z()) * ray;
    fp.corners[i] = hit.head<2>();
  }

  double twice_area = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2& u = fp.corners[i];
    const Vec2& v = fp.corners[(i + 1) % 4];
    twice_area += u.x() * v.y() - v.x() * u.y();
  }
  fp.area = 0.5 * std::abs(twice_area);
  fp.d1 = detail::point_line_distance(g.center, fp.corners[3], fp.corners[0]);
  fp.d2 = detail::point_line_distance(g.center, fp.corners[0], fp.corners[1]);
  return fp;
}

}  // namespace uavplace
