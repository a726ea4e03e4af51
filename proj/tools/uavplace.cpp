// Command-line front end: solve, sweeps, scheme comparison and geometry checks.
//
// Exit codes: 0 success, 1 infeasible or validation failure, 2 config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uavplace/experiments.hpp"

namespace {

constexpr int kExitInfeasible = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out;
  std::string trace;
  int samples = 1000;
  std::uint64_t seed = 1;
  bool skip_3d = false;
};

// Writes to `path`, or to stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw uavplace::ConfigError("--out", "cannot write " + path);
  out << text;
}

std::string output_path(const Options& opt, const uavplace::RunConfig& cfg) {
  return opt.out.empty() ? cfg.output : opt.out;
}

int cmd_solve(const Options& opt) {
  const auto cfg = uavplace::load_config(opt.config);
  const auto result = uavplace::bcd_solve(cfg.scenario, cfg.solver);
  std::cout << uavplace::format_solve_report(result, cfg.scenario);
  if (!opt.trace.empty()) emit(opt.trace, uavplace::trace_csv(result));
  if (!opt.out.empty()) {
    emit(opt.out, uavplace::to_csv({uavplace::detail::bcd_row(cfg.scenario, cfg.solver)}));
  }
  return result.status == uavplace::SolveStatus::Infeasible ? kExitInfeasible : 0;
}

int cmd_sweep_resolution(const Options& opt) {
  const auto cfg = uavplace::load_config(opt.config);
  emit(output_path(opt, cfg), uavplace::to_csv(uavplace::sweep_resolution(cfg)));
  return 0;
}

int cmd_sweep_distance(const Options& opt) {
  const auto cfg = uavplace::load_config(opt.config);
  emit(output_path(opt, cfg), uavplace::to_csv(uavplace::sweep_distance(cfg)));
  return 0;
}

int cmd_compare(const Options& opt) {
  const auto cfg = uavplace::load_config(opt.config);
  const auto rows = uavplace::compare_schemes(cfg);
  const auto csv = uavplace::to_csv(rows);
  if (opt.out.empty()) {
    std::cout << csv;
  } else {
    emit(opt.out, csv);
    for (const auto& r : rows) {
      std::cout << r.scheme << ": delay " << uavplace::format_number(r.delay_s) << " s, status " << r.status << '\n';
    }
  }
  return 0;
}

int cmd_validate_geometry(const Options& opt) {
  const auto cfg = uavplace::load_config(opt.config);
  if (opt.samples < 1) throw uavplace::ConfigError("--samples", "must be at least 1");
  std::optional<double> step_3d;
  if (!opt.skip_3d) step_3d = cfg.es3d_step_m;
  const auto rep = uavplace::validate_geometry(cfg.scenario, cfg.scenario.consts, opt.samples, opt.seed, step_3d);
  const auto text = uavplace::format_validation_report(rep);
  std::cout << text;
  if (!opt.out.empty()) emit(opt.out, text);
  return rep.passed() ? 0 : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV shooting-position planner"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output file");
  };

  auto* solve = app.add_subcommand("solve", "Optimal shooting position for the configured scenario");
  add_common(solve);
  solve->add_option("--trace", opt.trace, "Per-iteration trace CSV");

  auto* sweep_res = app.add_subcommand("sweep-resolution", "Delay against required resolution for each gamma0");
  add_common(sweep_res);
  sweep_res->add_option("--seed", opt.seed, "Unused; accepted for a uniform interface");

  auto* sweep_dist = app.add_subcommand("sweep-distance", "Delay against target-to-base-station distance");
  add_common(sweep_dist);
  sweep_dist->add_option("--seed", opt.seed, "Unused; accepted for a uniform interface");

  auto* validate = app.add_subcommand("validate-geometry", "Check closed forms against corner projection");
  add_common(validate);
  validate->add_option("--samples", opt.samples, "Random poses to check");
  validate->add_option("--seed", opt.seed, "Random seed");
  validate->add_flag("--skip-3d", opt.skip_3d, "Skip the 3D exhaustive-search check");

  auto* compare = app.add_subcommand("compare", "All schemes on the configured scenario");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (sweep_res->parsed()) return cmd_sweep_resolution(opt);
    if (sweep_dist->parsed()) return cmd_sweep_distance(opt);
    if (validate->parsed()) return cmd_validate_geometry(opt);
    if (compare->parsed()) return cmd_compare(opt);
  } catch (const uavplace::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const uavplace::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const uavplace::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitConfig;
}
