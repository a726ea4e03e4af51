#pragma once

// Run configuration: a JSON document whose nested objects give the key paths
// bs.x, gt.r0, camera.f0, link.gamma0, solver.precision, sweep.i_min, ...

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavplace/problem.hpp"
#include "uavplace/solver.hpp"

namespace uavplace {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& reason)
      : std::runtime_error(key.empty() ? reason : key + ": " + reason), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct SweepAxes {
  std::vector<double> gamma0{1e6, 1e7, 1e8};
  std::vector<double> i_min{0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
  std::vector<double> d_gb{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::vector<double> distance_i_min{0.1, 0.2, 0.3};
};

struct RunConfig {
  Scenario scenario;
  SolverConfig solver;
  SweepAxes sweep;
  double es_step_m = 1.0;
  double es3d_step_m = 5.0;
  std::string output;
};

namespace detail {

using json = nlohmann::json;

inline std::string join_key(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

inline void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(prefix, "expected an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError(join_key(prefix, key), "unknown key");
  }
}

inline const json& require(const json& obj, const std::string& prefix, const char* key) {
  if (!obj.contains(key)) throw ConfigError(join_key(prefix, key), "missing required key");
  return obj.at(key);
}

inline double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

inline double number(const json& obj, const std::string& prefix, const char* key) {
  return as_number(require(obj, prefix, key), join_key(prefix, key));
}

inline double number_or(const json& obj, const std::string& prefix, const char* key, double fallback) {
  return obj.contains(key) ? as_number(obj.at(key), join_key(prefix, key)) : fallback;
}

inline std::vector<double> number_list(const json& obj, const std::string& prefix, const char* key,
                                       const std::vector<double>& fallback) {
  if (!obj.contains(key)) return fallback;
  const std::string path = join_key(prefix, key);
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(path, "expected a list of numbers");
  if (v.empty()) throw ConfigError(path, "list must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::string text_or(const json& obj, const std::string& prefix, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw ConfigError(join_key(prefix, key), "expected a string");
  return obj.at(key).get<std::string>();
}

inline LinkBudget parse_link(const json& link) {
  reject_unknown(link, "link", {"bandwidth_hz", "gamma0", "p_dbm", "sigma2_dbm", "gamma_db", "beta0_db"});
  const double bandwidth = number_or(link, "link", "bandwidth_hz", 1e6);
  if (!(bandwidth > 0.0)) throw ConfigError("link.bandwidth_hz", "must be positive");

  const bool direct = link.contains("gamma0");
  const char* parts[] = {"p_dbm", "sigma2_dbm", "gamma_db", "beta0_db"};
  int given = 0;
  for (const char* p : parts) given += link.contains(p) ? 1 : 0;
  if (given != 0 && given != 4) {
    throw ConfigError("link", "p_dbm, sigma2_dbm, gamma_db and beta0_db must be given together");
  }
  if (!direct && given == 0) throw ConfigError("link.gamma0", "missing: give gamma0 or its dB components");

  double gamma0 = 0.0;
  if (given == 4) {
    gamma0 = LinkBudget::from_components(bandwidth, dbm_to_watts(number(link, "link", "p_dbm")),
                                         dbm_to_watts(number(link, "link", "sigma2_dbm")),
                                         db_to_linear(number(link, "link", "gamma_db")),
                                         db_to_linear(number(link, "link", "beta0_db")))
                 .gamma0;
  }
  if (direct) {
    const double g = number(link, "link", "gamma0");
    if (!(g > 0.0)) throw ConfigError("link.gamma0", "must be positive");
    if (given == 4 && std::abs(g - gamma0) > 1e-6 * gamma0) {
      throw ConfigError("link.gamma0", "inconsistent with the value implied by the dB components (" +
                                           std::to_string(gamma0) + ")");
    }
    gamma0 = g;
  }
  return LinkBudget{bandwidth, gamma0};
}

}  // namespace detail

inline RunConfig parse_config(const nlohmann::json& doc) {
  using detail::number;
  using detail::number_or;
  detail::reject_unknown(doc, "",
                         {"bs", "gt", "camera", "link", "alpha", "i_min", "delay_basis", "solver", "sweep", "es",
                          "output"});

  const auto& bs_j = detail::require(doc, "", "bs");
  detail::reject_unknown(bs_j, "bs", {"x", "y", "z"});
  BaseStation bs{Vec2(number(bs_j, "bs", "x"), number(bs_j, "bs", "y")), number(bs_j, "bs", "z")};
  if (!(bs.z >= 0.0)) throw ConfigError("bs.z", "must be non-negative");

  const auto& gt_j = detail::require(doc, "", "gt");
  detail::reject_unknown(gt_j, "gt", {"x", "y", "r0"});
  GroundTarget gt{Vec2(number(gt_j, "gt", "x"), number(gt_j, "gt", "y")), number(gt_j, "gt", "r0")};
  if (!(gt.r0 > 0.0)) throw ConfigError("gt.r0", "must be positive");

  const auto& cam_j = detail::require(doc, "", "camera");
  detail::reject_unknown(cam_j, "camera", {"f0", "w0", "l0", "delta0", "bits_per_pixel", "bit_depth_model"});
  CameraIntrinsics cam;
  cam.f0 = number(cam_j, "camera", "f0");
  cam.w0 = number(cam_j, "camera", "w0");
  cam.l0 = number(cam_j, "camera", "l0");
  cam.delta0 = number(cam_j, "camera", "delta0");
  if (cam_j.contains("bits_per_pixel")) {
    const auto& v = cam_j.at("bits_per_pixel");
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
      throw ConfigError("camera.bits_per_pixel", "expected a positive integer");
    }
    cam.bits_per_pixel = v.get<int>();
  }
  for (const char* k : {"f0", "w0", "l0", "delta0"}) {
    if (!(number(cam_j, "camera", k) > 0.0)) throw ConfigError(std::string("camera.") + k, "must be positive");
  }
  const auto depth = detail::text_or(cam_j, "camera", "bit_depth_model", "linear");
  if (depth != "linear" && depth != "exponent") {
    throw ConfigError("camera.bit_depth_model", "expected \"linear\" or \"exponent\"");
  }

  const auto link = detail::parse_link(detail::require(doc, "", "link"));

  const double i_min = number(doc, "", "i_min");
  if (!(i_min > 0.0 && i_min < 1.0)) throw ConfigError("i_min", "must lie in (0, 1)");
  const double alpha = number(doc, "", "alpha");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1]");
  const auto basis = detail::text_or(doc, "", "delay_basis", "requirement");
  if (basis != "requirement" && basis != "achieved") {
    throw ConfigError("delay_basis", "expected \"requirement\" or \"achieved\"");
  }

  RunConfig cfg;
  cfg.scenario = Scenario::make(bs, gt, cam, link, i_min, alpha);
  cfg.scenario.bit_depth = depth == "linear" ? BitDepthModel::Linear : BitDepthModel::Exponent;
  cfg.scenario.delay_basis = basis == "requirement" ? DelayBasis::Requirement : DelayBasis::Achieved;

  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    detail::reject_unknown(s, "solver", {"precision", "max_iters", "bisect_tol", "feasibility_tol"});
    cfg.solver.precision = number_or(s, "solver", "precision", cfg.solver.precision);
    if (s.contains("max_iters")) {
      if (!s.at("max_iters").is_number_integer()) throw ConfigError("solver.max_iters", "expected an integer");
      cfg.solver.max_iters = s.at("max_iters").get<int>();
    }
    cfg.solver.bisect_tol = number_or(s, "solver", "bisect_tol", cfg.solver.bisect_tol);
    cfg.solver.feasibility_tol = number_or(s, "solver", "feasibility_tol", cfg.solver.feasibility_tol);
    try {
      cfg.solver.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError("solver", e.what());
    }
  }

  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    detail::reject_unknown(s, "sweep", {"gamma0", "i_min", "d_gb", "distance_i_min"});
    cfg.sweep.gamma0 = detail::number_list(s, "sweep", "gamma0", cfg.sweep.gamma0);
    cfg.sweep.i_min = detail::number_list(s, "sweep", "i_min", cfg.sweep.i_min);
    cfg.sweep.d_gb = detail::number_list(s, "sweep", "d_gb", cfg.sweep.d_gb);
    cfg.sweep.distance_i_min = detail::number_list(s, "sweep", "distance_i_min", cfg.sweep.distance_i_min);
    for (double g : cfg.sweep.gamma0)
      if (!(g > 0.0)) throw ConfigError("sweep.gamma0", "values must be positive");
    for (const auto* list : {&cfg.sweep.i_min, &cfg.sweep.distance_i_min})
      for (double v : *list)
        if (!(v > 0.0 && v < 1.0)) throw ConfigError("sweep.i_min", "values must lie in (0, 1)");
    for (double d : cfg.sweep.d_gb)
      if (!(d >= 0.0)) throw ConfigError("sweep.d_gb", "values must be non-negative");
  }

  if (doc.contains("es")) {
    const auto& s = doc.at("es");
    detail::reject_unknown(s, "es", {"step_m", "step_3d_m"});
    cfg.es_step_m = number_or(s, "es", "step_m", cfg.es_step_m);
    cfg.es3d_step_m = number_or(s, "es", "step_3d_m", cfg.es3d_step_m);
    if (!(cfg.es_step_m > 0.0)) throw ConfigError("es.step_m", "must be positive");
    if (!(cfg.es3d_step_m > 0.0)) throw ConfigError("es.step_3d_m", "must be positive");
  }

  cfg.output = detail::text_or(doc, "", "output", "");
  return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace uavplace
