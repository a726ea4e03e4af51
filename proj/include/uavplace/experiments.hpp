#pragma once

// Experiment drivers behind the command-line tool: scheme comparison, the
// resolution and distance sweeps, CSV emission and geometry validation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uavplace/baselines.hpp"
#include "uavplace/config.hpp"
#include "uavplace/solver.hpp"

namespace uavplace {

inline constexpr const char* kSchemeBcd = "proposed-bcd";
inline constexpr const char* kSchemeEs = "proposed-es";
inline constexpr const char* kSchemeEs3d = "proposed-es3d";
inline constexpr const char* kSchemeConventional = "conventional";

struct SweepRow {
  std::string scheme;
  double gamma0 = 0.0;
  double i_min = 0.0;
  double d_gb = 0.0;
  double eta = std::numeric_limits<double>::quiet_NaN();
  double x = std::numeric_limits<double>::quiet_NaN();
  double y = std::numeric_limits<double>::quiet_NaN();
  double z = std::numeric_limits<double>::quiet_NaN();
  double resolution = std::numeric_limits<double>::quiet_NaN();
  double rate_bps = std::numeric_limits<double>::quiet_NaN();
  double delay_s = std::numeric_limits<double>::quiet_NaN();
  std::int64_t iterations = 0;  // BCD outer iterations, or grid nodes for ES
  std::string status = "ok";
};

inline constexpr const char* kCsvHeader =
    "scheme,gamma0,i_min,d_gb,eta,x,y,z,resolution,rate_bps,delay_s,iterations,status";

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.scheme;
    for (double v : {r.gamma0, r.i_min, r.d_gb, r.eta, r.x, r.y, r.z, r.resolution, r.rate_bps, r.delay_s}) {
      out += ',';
      out += format_number(v);
    }
    out += ',' + std::to_string(r.iterations) + ',' + r.status + '\n';
  }
  return out;
}

namespace detail {

inline SweepRow row_header(const char* scheme, const Scenario& s) {
  SweepRow r;
  r.scheme = scheme;
  r.gamma0 = s.link.gamma0;
  r.i_min = s.i_min;
  r.d_gb = s.d_gb();
  return r;
}

inline SweepRow bcd_row(const Scenario& s, const SolverConfig& cfg) {
  auto row = row_header(kSchemeBcd, s);
  const auto res = bcd_solve(s, cfg);
  row.iterations = res.iterations;
  if (res.status == SolveStatus::Infeasible) {
    row.status = "infeasible";
    return row;
  }
  row.status = res.status == SolveStatus::Converged ? "ok" : "max_iters";
  row.eta = res.point.eta;
  row.x = res.placement.q.x();
  row.y = res.placement.q.y();
  row.z = res.placement.z;
  row.resolution = res.resolution;
  row.rate_bps = res.rate;
  row.delay_s = res.delay;
  return row;
}

template <typename Run>
SweepRow baseline_row(const char* scheme, const Scenario& s, Run&& run) {
  auto row = row_header(scheme, s);
  try {
    const BaselineResult b = run();
    row.eta = b.eta;
    row.x = b.placement.q.x();
    row.y = b.placement.q.y();
    row.z = b.placement.z;
    row.resolution = b.resolution;
    row.rate_bps = b.rate;
    row.delay_s = b.delay;
    row.iterations = b.evaluations;
  } catch (const Infeasible&) {
    row.status = "infeasible";
  }
  return row;
}

inline int scheme_rank(const std::string& scheme) {
  if (scheme == kSchemeBcd) return 0;
  if (scheme == kSchemeEs) return 1;
  if (scheme == kSchemeConventional) return 2;
  return 3;
}

inline void sort_rows(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.gamma0 != b.gamma0) return a.gamma0 < b.gamma0;
    if (a.i_min != b.i_min) return a.i_min < b.i_min;
    if (a.d_gb != b.d_gb) return a.d_gb < b.d_gb;
    return scheme_rank(a.scheme) < scheme_rank(b.scheme);
  });
}

}  // namespace detail

/// The three compared schemes on one scenario: BCD, 2D exhaustive search, and
/// the vertical scheme.
inline std::vector<SweepRow> run_schemes(const Scenario& s, const RunConfig& cfg) {
  return {detail::bcd_row(s, cfg.solver),
          detail::baseline_row(kSchemeEs, s, [&] { return exhaustive_search_2d(s, cfg.es_step_m); }),
          detail::baseline_row(kSchemeConventional, s, [&] { return vertical_baseline(s); })};
}

/// Scenario with the target moved along its bearing from the base station to
/// horizontal distance d_gb. A target at the base station's foot is moved
/// along +x.
inline Scenario with_distance(const Scenario& base, double d_gb) {
  Scenario s = base;
  const Vec2 offset = base.gt.center - base.bs.w;
  const double d = offset.norm();
  const Vec2 bearing = d > 0.0 ? Vec2(offset / d) : Vec2(1.0, 0.0);
  s.gt.center = base.bs.w + d_gb * bearing;
  return s;
}

inline Scenario with_requirement(const Scenario& base, double i_min) {
  Scenario s = base;
  s.i_min = i_min;
  s.validate();
  return s;
}

inline Scenario with_gamma0(const Scenario& base, double gamma0) {
  Scenario s = base;
  s.link.gamma0 = gamma0;
  s.validate();
  return s;
}

/// Transmission time against the resolution requirement, for every gamma0.
inline std::vector<SweepRow> sweep_resolution(const RunConfig& cfg) {
  if (cfg.sweep.gamma0.empty()) throw ConfigError("sweep.gamma0", "list must not be empty");
  if (cfg.sweep.i_min.empty()) throw ConfigError("sweep.i_min", "list must not be empty");
  std::vector<SweepRow> rows;
  for (double g : cfg.sweep.gamma0) {
    for (double q : cfg.sweep.i_min) {
      const auto s = with_requirement(with_gamma0(cfg.scenario, g), q);
      for (auto& r : run_schemes(s, cfg)) rows.push_back(std::move(r));
    }
  }
  detail::sort_rows(rows);
  return rows;
}

/// Transmission time against target-to-base-station distance, for every
/// requirement in sweep.distance_i_min.
inline std::vector<SweepRow> sweep_distance(const RunConfig& cfg) {
  if (cfg.sweep.d_gb.empty()) throw ConfigError("sweep.d_gb", "list must not be empty");
  if (cfg.sweep.distance_i_min.empty()) throw ConfigError("sweep.distance_i_min", "list must not be empty");
  std::vector<SweepRow> rows;
  for (double q : cfg.sweep.distance_i_min) {
    for (double d : cfg.sweep.d_gb) {
      const auto s = with_distance(with_requirement(cfg.scenario, q), d);
      for (auto& r : run_schemes(s, cfg)) rows.push_back(std::move(r));
    }
  }
  detail::sort_rows(rows);
  return rows;
}

// Scheme comparison on the configured scenario, including the 3D search.
inline std::vector<SweepRow> compare_schemes(const RunConfig& cfg) {
  auto rows = run_schemes(cfg.scenario, cfg);
  rows.push_back(detail::baseline_row(kSchemeEs3d, cfg.scenario,
                                      [&] { return exhaustive_search_3d(cfg.scenario, cfg.es3d_step_m); }));
  return rows;
}

inline std::string format_solve_report(const SolveResult& r, const Scenario& s) {
  std::ostringstream os;
  os << "status:      " << to_string(r.status) << '\n';
  os << "iterations:  " << r.iterations << '\n';
  if (r.status == SolveStatus::Infeasible) {
    os << "no placement meets i_min=" << format_number(s.i_min) << " (vertical maximum "
       << format_number(s.consts.a / std::pow(s.gt.r0 * std::max(s.consts.b1, s.consts.b2), 2)) << ")\n";
    return os.str();
  }
  os << "eta:         " << format_number(r.point.eta) << '\n';
  os << "position:    (" << format_number(r.placement.q.x()) << ", " << format_number(r.placement.q.y()) << ", "
     << format_number(r.placement.z) << ") m\n";
  os << "resolution:  " << format_number(r.resolution) << " (required " << format_number(s.i_min) << ")\n";
  os << "rate:        " << format_number(r.rate) << " bit/s\n";
  os << "delay:       " << format_number(r.delay) << " s\n";
  return os.str();
}

inline std::string trace_csv(const SolveResult& r) {
  std::string out = "iteration,eta,z,objective\n";
  for (const auto& t : r.trace) {
    out += std::to_string(t.iteration) + ',' + format_number(t.eta) + ',' + format_number(t.z) + ',' +
           format_number(t.objective) + '\n';
  }
  return out;
}

struct ValidationReport {
  int samples = 0;
  double max_area_error = 0.0;      // relative, closed form vs corner projection
  double max_d1_error = 0.0;
  double max_d2_error = 0.0;
  double max_identity_error = 0.0;  // resolution * area vs pi r0^2
  bool segment_checked = false;
  double segment_offset_m = 0.0;      // 3D search optimum to the target-base segment
  double segment_limit_m = 0.0;
  double threshold = 1e-6;

  bool passed() const {
    const bool geometry = max_area_error < threshold && max_d1_error < threshold && max_d2_error < threshold &&
                          max_identity_error < threshold;
    return geometry && (!segment_checked || segment_offset_m <= segment_limit_m);
  }
};

namespace detail {

inline double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace detail

/// Compares the closed-form footprint quantities evaluated with `analytic`
/// constants against corner projection of the scenario camera on random
/// strictly feasible poses; optionally checks that the 3D search optimum lies
/// within one grid diagonal of the target-base segment.
inline ValidationReport validate_geometry(const Scenario& s, const CameraConstants& analytic, int samples,
                                          std::uint64_t seed, std::optional<double> segment_step = {}) {
  if (samples < 1) throw InvalidArgument("validation needs at least one sample");
  ValidationReport rep;
  rep.samples = samples;
  const double inf = std::numeric_limits<double>::infinity();
  const double b1 = 2.0 * s.cam.f0 / s.cam.w0;
  const double disc = std::numbers::pi * s.gt.r0 * s.gt.r0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < samples; ++i) {
    GroundTarget g = s.gt;
    g.center = Vec2(-500.0 + 1000.0 * unit(rng), -500.0 + 1000.0 * unit(rng));
    const double z = 1.0 + 399.0 * unit(rng);
    const double rho = 0.95 * unit(rng) * b1 * z;
    const double bearing = 2.0 * std::numbers::pi * unit(rng);
    const Placement p{g.center - rho * Vec2(std::cos(bearing), std::sin(bearing)), z};

    const Footprint fp = footprint_oracle(p, g, s.cam);
    rep.max_area_error = std::max(rep.max_area_error, detail::relative_error(coverage_area(p, g, s.cam), fp.area));
    try {
      const auto [d1, d2] = edge_distances(p, g, analytic);
      rep.max_d1_error = std::max(rep.max_d1_error, detail::relative_error(d1, fp.d1));
      rep.max_d2_error = std::max(rep.max_d2_error, detail::relative_error(d2, fp.d2));
      const double product = resolution(p, g, analytic) * coverage_area(p, g, s.cam);
      rep.max_identity_error = std::max(rep.max_identity_error, detail::relative_error(product, disc));
    } catch (const AngleLimit&) {
      rep.max_d1_error = rep.max_d2_error = rep.max_identity_error = inf;
    }
  }

  if (segment_step) {
    const auto best = exhaustive_search_3d(s, *segment_step);
    rep.segment_checked = true;
    rep.segment_offset_m = distance_to_segment(best.placement.q, s.gt.center, s.bs.w);
    rep.segment_limit_m = *segment_step * std::numbers::sqrt2;
  }
  return rep;
}

inline std::string format_validation_report(const ValidationReport& r) {
  std::ostringstream os;
  os << "samples:                 " << r.samples << '\n';
  os << "coverage area rel. err:  " << format_number(r.max_area_error) << '\n';
  os << "near edge d1 rel. err:   " << format_number(r.max_d1_error) << '\n';
  os << "side edge d2 rel. err:   " << format_number(r.max_d2_error) << '\n';
  os << "I*S = pi r0^2 rel. err:  " << format_number(r.max_identity_error) << '\n';
  os << "threshold:               " << format_number(r.threshold) << '\n';
  if (r.segment_checked) {
    os << "3D optimum off segment:  " << format_number(r.segment_offset_m) << " m (limit "
       << format_number(r.segment_limit_m) << " m)\n";
  }
  os << "result:                  " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace uavplace
