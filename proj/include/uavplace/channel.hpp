#pragma once

// Line-of-sight UAV-to-base-station link and image transmission time.

#include <cmath>

#include "uavplace/errors.hpp"
#include "uavplace/geometry.hpp"

namespace uavplace {

struct BaseStation {
  Vec2 w = Vec2::Zero();  // horizontal position [m]
  double z = 0.0;         // antenna altitude [m]
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }

struct LinkBudget {
  double bandwidth_hz = 1e6;
  double gamma0 = 0.0;  // received SNR at 1 m, linear

  /// gamma0 = P beta0 / (sigma^2 Gamma), all arguments linear.
  static LinkBudget from_components(double bandwidth_hz, double transmit_power_w, double noise_power_w,
                                    double snr_gap, double beta0) {
    if (!(transmit_power_w > 0.0) || !(noise_power_w > 0.0) || !(snr_gap > 0.0) || !(beta0 > 0.0)) {
      throw InvalidArgument("link budget components must be positive");
    }
    return LinkBudget{bandwidth_hz, transmit_power_w * beta0 / (noise_power_w * snr_gap)};
  }

  void validate() const {
    if (!(bandwidth_hz > 0.0)) throw InvalidArgument("link: bandwidth must be positive");
    if (!(gamma0 > 0.0)) throw InvalidArgument("link: gamma0 must be positive");
  }
};

inline double uav_bs_distance_sq(const Placement& p, const BaseStation& bs) {
  const double dz = p.z - bs.z;
  return (p.q - bs.w).squaredNorm() + dz * dz;
}

inline double uav_bs_distance(const Placement& p, const BaseStation& bs) {
  return std::sqrt(uav_bs_distance_sq(p, bs));
}

/// Free-space power gain beta0 / d^2.
inline double channel_gain(const Placement& p, const BaseStation& bs, double beta0) {
  const double d_sq = uav_bs_distance_sq(p, bs);
  if (d_sq == 0.0) throw ZeroDistance("channel gain undefined at zero UAV-BS distance");
  return beta0 / d_sq;
}

// Rate at a given squared UAV-BS distance.
inline double rate_at_distance_sq(double distance_sq, const LinkBudget& lb) {
  if (!(distance_sq > 0.0)) throw ZeroDistance("rate undefined at zero UAV-BS distance");
  return lb.bandwidth_hz * std::log2(1.0 + lb.gamma0 / distance_sq);
}

/// B log2(1 + gamma0 / d^2) in bits per second.
inline double achievable_rate(const Placement& p, const BaseStation& bs, const LinkBudget& lb) {
  return rate_at_distance_sq(uav_bs_distance_sq(p, bs), lb);
}

enum class BitDepthModel {
  Linear,     // pixels * bits_per_pixel
  Exponent,   // pixels * 2^bits_per_pixel
};

/// Uncompressed image size in bits.
inline double image_size_bits(const CameraIntrinsics& cam, BitDepthModel model = BitDepthModel::Linear) {
  const double pixels = cam.w0 * cam.l0 / (cam.delta0 * cam.delta0);
  const double per_pixel = model == BitDepthModel::Linear ? static_cast<double>(cam.bits_per_pixel)
                                                          : std::exp2(static_cast<double>(cam.bits_per_pixel));
  return pixels * per_pixel;
}

/// alpha * image_bits * fraction / rate.
inline double transmission_time(double fraction, double rate, double image_bits, double alpha) {
  if (!(rate > 0.0)) throw ZeroRate("transmission time undefined at zero rate");
  return alpha * image_bits * fraction / rate;
}

inline double transmission_time(double fraction, double rate, const CameraIntrinsics& cam, double alpha,
                                BitDepthModel model = BitDepthModel::Linear) {
  return transmission_time(fraction, rate, image_size_bits(cam, model), alpha);
}

}  // namespace uavplace
