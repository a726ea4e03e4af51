// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <scenario.json>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "uavplace/uavplace.hpp"

using namespace uavplace;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

struct Verdict {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Verdict& v) {
  std::printf("[%s] C%d %s: %s\n", v.ok ? "PASS" : "FAIL", id, title, v.detail.c_str());
  std::fflush(stdout);
  failures += v.ok ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random strictly capturable pose around a random target.
struct Pose {
  GroundTarget g;
  Placement p;
};

Pose random_pose(std::mt19937_64& rng, const Scenario& s) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Pose out{s.gt, {}};
  out.g.center = Vec2(-500.0 + 1000.0 * u(rng), -500.0 + 1000.0 * u(rng));
  const double z = 1.0 + 399.0 * u(rng);
  const double rho = 0.95 * u(rng) * s.consts.b1 * z;
  const double phi = 2.0 * std::numbers::pi * u(rng);
  out.p = Placement{out.g.center + rho * Vec2(std::cos(phi), std::sin(phi)), z};
  return out;
}

Verdict geometry_identity(const Scenario& s) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  const double disc = std::numbers::pi * s.gt.r0 * s.gt.r0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [g, p] = random_pose(rng, s);
    worst = std::max(worst, rel(resolution(p, g, s.consts) * coverage_area(p, g, s.cam), disc));
  }
  const double t = seconds_since(t0);
  return {worst < 1e-9 && t < 1.0, fmt("max rel err %.3g (< 1e-9), %.3f s (< 1 s)", worst, t)};
}

Verdict oracle_equivalence(const Scenario& s) {
  const auto t0 = Clock::now();
  const auto rep = validate_geometry(s, s.consts, 1000, 102);
  const double t = seconds_since(t0);
  const double worst = std::max({rep.max_area_error, rep.max_d1_error, rep.max_d2_error});
  return {worst < 1e-6 && t < 5.0,
          fmt("area %.3g, d1 %.3g, d2 %.3g (< 1e-6), %.3f s (< 5 s)", rep.max_area_error, rep.max_d1_error,
              rep.max_d2_error, t)};
}

Verdict monotonicity(const Scenario& s) {
  int resolution_breaks = 0;
  double worst_derivative = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double z = 2.0 + 4.0 * k;
    const auto f = ResolutionProfile::at_altitude(z, s.consts);
    const double edge = s.consts.b1 * z;
    double previous = f.value(0.0);
    for (int i = 1; i < 1000; ++i) {
      const double now = f.value(i * 1e-3 * edge);
      if (!(now < previous)) ++resolution_breaks;
      previous = now;
    }
    for (double frac = 0.05; frac < 0.951; frac += 0.05) {
      const double x = frac * edge;
      const double h = 1e-5 * edge;
      const double fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
      worst_derivative = std::max(worst_derivative, rel(f.derivative(x), fd));
    }
  }
  int rate_breaks = 0;
  double previous = rate_at_distance_sq(1e-2, s.link);
  for (double d = 0.11; d < 1e4; d *= 1.01) {
    const double now = rate_at_distance_sq(d * d, s.link);
    if (!(now < previous)) ++rate_breaks;
    previous = now;
  }
  return {resolution_breaks == 0 && rate_breaks == 0 && worst_derivative < 1e-4,
          fmt("resolution breaks %d over 100 slices, rate breaks %d, derivative rel err %.3g (< 1e-4)",
              resolution_breaks, rate_breaks, worst_derivative)};
}

Verdict on_segment(const Scenario& base) {
  const auto s = with_requirement(with_gamma0(base, 1e7), 0.2);
  const auto t0 = Clock::now();
  const auto r = exhaustive_search_3d(s, 5.0);
  const double t = seconds_since(t0);
  const double off = distance_to_segment(r.placement.q, s.gt.center, s.bs.w);
  return {off <= 5.0 * std::numbers::sqrt2 && t < 60.0,
          fmt("optimum (%.1f, %.1f, %.1f) is %.3f m off the segment (<= 7.07 m), %.1f s (< 60 s)", r.placement.q.x(),
              r.placement.q.y(), r.placement.z, off, t)};
}

Verdict solver_vs_oracle(const Scenario& base, const SolverConfig& cfg) {
  Verdict v;
  double worst = 0.0, slowest_bcd = 0.0, slowest_es = 0.0;
  for (double g : {1e6, 1e7, 1e8}) {
    for (double q : {0.1, 0.2, 0.3}) {
      const auto s = with_requirement(with_gamma0(base, g), q);
      auto t0 = Clock::now();
      const auto bcd = bcd_solve(s, cfg);
      slowest_bcd = std::max(slowest_bcd, seconds_since(t0));
      t0 = Clock::now();
      const auto es = exhaustive_search_2d(s, 1.0);
      slowest_es = std::max(slowest_es, seconds_since(t0));
      const double gap = bcd.status == SolveStatus::Infeasible ? INFINITY : rel(bcd.delay, es.delay);
      worst = std::max(worst, gap);
    }
  }
  v.ok = worst <= 0.05 && slowest_bcd < 1.0 && slowest_es < 30.0;
  v.detail = fmt("max |T_bcd - T_es|/T_es %.4f (<= 0.05), slowest BCD %.4f s, slowest ES %.2f s", worst,
                 slowest_bcd, slowest_es);
  return v;
}

// Looks for a step where the gap shrinks by more than rounding.
std::string first_decrease(const std::vector<std::pair<double, double>>& series, const char* axis) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].second < series[i - 1].second - 1e-9 * std::abs(series[i - 1].second)) {
      return fmt("%s %g->%g gap %.4g->%.4g", axis, series[i - 1].first, series[i].first, series[i - 1].second,
                 series[i].second);
    }
  }
  return "";
}

Verdict dominance_and_trends(const RunConfig& cfg) {
  int cells = 0, violations = 0;
  std::vector<std::string> broken;

  // Gap per series key: (gamma0 or i_min) -> [(axis value, gap)].
  auto collect = [&](const std::vector<SweepRow>& rows, bool by_gamma) {
    std::map<double, std::vector<std::pair<double, double>>> series;
    const SweepRow* bcd = nullptr;
    for (const auto& r : rows) {
      if (r.scheme == kSchemeBcd) bcd = &r;
      if (r.scheme != kSchemeConventional || !bcd) continue;
      if (r.status != "ok" || bcd->status != "ok") continue;
      ++cells;
      if (bcd->delay_s > r.delay_s * (1.0 + 1e-12)) ++violations;
      const double gap = r.delay_s - bcd->delay_s;
      if (by_gamma) series[r.gamma0].push_back({r.i_min, gap});
      else series[r.i_min].push_back({r.d_gb, gap});
    }
    return series;
  };

  for (const auto& [g, s] : collect(sweep_resolution(cfg), true)) {
    const auto d = first_decrease(s, "i_min");
    if (!d.empty()) broken.push_back(fmt("gamma0=%g: ", g) + d);
  }
  for (const auto& [q, s] : collect(sweep_distance(cfg), false)) {
    const auto d = first_decrease(s, "d_gb");
    if (!d.empty()) broken.push_back(fmt("i_min=%g: ", q) + d);
  }

  Verdict v;
  v.ok = violations == 0 && broken.empty() && cells > 0;
  v.detail = fmt("dominance violated in %d of %d feasible cells", violations, cells);
  for (const auto& b : broken) v.detail += "; gap decreases at " + b;
  return v;
}

Verdict sca_properties(const Scenario& base, const SolverConfig& cfg) {
  const auto s = with_gamma0(base, 1e7);
  const double d = s.d_gb();
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double tangency = 0.0;
  int above = 0;
  auto tangent_err = [](double surrogate, double exact) {
    return std::abs(surrogate - exact) / std::max(1.0, std::abs(exact));
  };
  for (int i = 0; i < 10000; ++i) {
    const double z = 10.0 + 250.0 * u(rng);
    const double z_hat = 10.0 + 250.0 * u(rng);
    const double reach = std::min(1.0, 0.98 * std::min(z, z_hat) * s.consts.b1 / d);
    const double eta = reach * u(rng);
    const double eta_hat = reach * u(rng);

    const auto at_eta_hat = residuals({eta_hat, z}, s);
    const auto at_z_hat = residuals({eta, z_hat}, s);
    tangency = std::max({tangency, tangent_err(sca::resolution_eta(eta_hat, eta_hat, z, s), at_eta_hat.resolution_log),
                         tangent_err(sca::containment_eta(eta_hat, eta_hat, z, s), at_eta_hat.containment),
                         tangent_err(sca::resolution_z(z_hat, z_hat, eta, s), at_z_hat.resolution_log),
                         tangent_err(sca::containment_z(z_hat, z_hat, eta, s), at_z_hat.containment)});

    const auto exact = residuals({eta, z}, s);
    const double slack_log = 1e-12 * (1.0 + std::abs(exact.resolution_log));
    const double slack_area = 1e-12 * (z * z + d * d);
    above += sca::resolution_eta(eta, eta_hat, z, s) > exact.resolution_log + slack_log;
    above += sca::containment_eta(eta, eta_hat, z, s) > exact.containment + slack_area;
    above += sca::resolution_z(z, z_hat, eta, s) > exact.resolution_log + slack_log;
    above += sca::containment_z(z, z_hat, eta, s) > exact.containment + slack_area;
  }

  int infeasible_iterates = 0, increases = 0, unconverged = 0, most_iters = 0;
  for (double g : {1e6, 1e7, 1e8}) {
    for (double q : {0.1, 0.2, 0.3}) {
      const auto sc = with_requirement(with_gamma0(base, g), q);
      const auto r = bcd_solve(sc, cfg);
      if (r.status != SolveStatus::Converged) ++unconverged;
      most_iters = std::max(most_iters, r.iterations);
      for (std::size_t k = 0; k < r.trace.size(); ++k) {
        if (!feasible({r.trace[k].eta, r.trace[k].z}, sc, 1e-8)) ++infeasible_iterates;
        if (k > 0 && r.trace[k].objective > r.trace[k - 1].objective) ++increases;
      }
    }
  }
  return {tangency <= 1e-12 && above == 0 && infeasible_iterates == 0 && increases == 0 && unconverged == 0,
          fmt("tangency err %.3g (<= 1e-12), surrogate above exact %d/40000, infeasible iterates %d, "
              "objective increases %d, unconverged %d/9 (max %d iterations)",
              tangency, above, infeasible_iterates, increases, unconverged, most_iters)};
}

Verdict determinism(const RunConfig& cfg) {
  const bool res = to_csv(sweep_resolution(cfg)) == to_csv(sweep_resolution(cfg));
  const bool dist = to_csv(sweep_distance(cfg)) == to_csv(sweep_distance(cfg));
  const auto a = validate_geometry(cfg.scenario, cfg.scenario.consts, 200, 42);
  const auto b = validate_geometry(cfg.scenario, cfg.scenario.consts, 200, 42);
  const bool val = format_validation_report(a) == format_validation_report(b);
  return {res && dist && val, fmt("sweep-resolution %s, sweep-distance %s, validate-geometry %s",
                                  res ? "identical" : "differs", dist ? "identical" : "differs",
                                  val ? "identical" : "differs")};
}

Verdict vertical_arithmetic(const Scenario& base) {
  const auto& c = base.consts;
  const double floor = base.gt.r0 * std::max(c.b1, c.b2);
  const double edge = c.a / (floor * floor);
  double worst = 0.0;
  int wrong_verdicts = 0, checked = 0;
  std::vector<double> requirements;
  for (int k = 1; k < 100; ++k) requirements.push_back(0.01 * k);
  for (double f : {1.0 - 1e-9, 1.0 + 1e-9}) requirements.push_back(edge * f);
  for (double q : requirements) {
    const auto s = with_requirement(base, q);
    const bool expect_infeasible = std::sqrt(c.a / q) < floor;
    try {
      const auto r = vertical_baseline(s);
      worst = std::max(worst, rel(r.resolution, q));
      wrong_verdicts += expect_infeasible;
    } catch (const Infeasible&) {
      wrong_verdicts += !expect_infeasible;
    }
    ++checked;
  }
  return {worst <= 1e-9 && wrong_verdicts == 0,
          fmt("resolution rel err %.3g (<= 1e-9), wrong feasibility verdicts %d/%d, threshold i_min %.9g", worst,
              wrong_verdicts, checked, edge)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <scenario.json>\n", argv[0]);
    return 2;
  }
  const auto cfg = load_config(argv[1]);
  const auto& s = cfg.scenario;

  report(1, "resolution x coverage area identity", geometry_identity(s));
  report(2, "closed forms vs corner projection", oracle_equivalence(s));
  report(3, "monotonicity and derivative", monotonicity(s));
  report(4, "3D search optimum on the target-base segment", on_segment(s));
  report(5, "BCD vs 2D exhaustive search", solver_vs_oracle(s, cfg.solver));
  report(6, "dominance and gap trends", dominance_and_trends(cfg));
  report(7, "surrogate and iterate properties", sca_properties(s, cfg.solver));
  report(8, "deterministic output", determinism(cfg));
  report(9, "vertical scheme arithmetic", vertical_arithmetic(s));

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
