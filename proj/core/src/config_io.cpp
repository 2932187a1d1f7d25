#include "robnav/config_io.hpp"

#include <fstream>
#include <set>
#include <string>

#include "json.hpp"
#include "robnav/errors.hpp"

namespace robnav {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items()) {
    if (known.find(key) == known.end()) {
      throw ConfigError("config: unknown key '" + scope + key + "'");
    }
  }
}

double get_double(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_number()) {
    throw ConfigError(std::string("config: '") + key + "' must be a number");
  }
  return obj[key].get<double>();
}

Eigen::Vector3d get_vec3(const json& obj, const char* key, const Eigen::Vector3d& fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const json& arr = obj[key];
  if (!arr.is_array() || arr.size() != 3) {
    throw ConfigError(std::string("config: '") + key + "' must be an array of 3 numbers");
  }
  return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

void parse_noise(const json& obj, NoiseConfig& n) {
  reject_unknown_keys(obj,
                      {"sigma2_omega", "sigma2_v", "sigma2_q", "sigma2_p", "kappa", "r",
                       "delta", "g_n"},
                      "noise.");
  n.sigma2_omega = get_double(obj, "sigma2_omega", n.sigma2_omega);
  n.sigma2_v = get_double(obj, "sigma2_v", n.sigma2_v);
  n.sigma2_q = get_double(obj, "sigma2_q", n.sigma2_q);
  n.sigma2_p = get_double(obj, "sigma2_p", n.sigma2_p);
  n.kappa = get_double(obj, "kappa", n.kappa);
  n.delta = get_double(obj, "delta", n.delta);
  n.g_n = get_vec3(obj, "g_n", n.g_n);
  if (obj.contains("r")) {
    const json& arr = obj["r"];
    if (!arr.is_array() || arr.size() != 6) {
      throw ConfigError("config: 'noise.r' must be an array of 6 numbers");
    }
    for (int i = 0; i < 6; ++i) {
      n.r(i) = arr[static_cast<std::size_t>(i)].get<double>();
    }
  }
}

void parse_flight(const json& obj, FlightSource& f) {
  reject_unknown_keys(obj, {"source", "log_dir", "plan", "sensors"}, "flight.");
  if (obj.contains("source")) {
    const std::string source = obj["source"].get<std::string>();
    if (source == "simulate") {
      f.kind = FlightSource::Kind::Simulate;
    } else if (source == "load") {
      f.kind = FlightSource::Kind::Load;
    } else {
      throw ConfigError("config: 'flight.source' must be 'simulate' or 'load'");
    }
  }
  if (obj.contains("log_dir")) {
    f.log_dir = obj["log_dir"].get<std::string>();
  }
  if (f.kind == FlightSource::Kind::Load && f.log_dir.empty()) {
    throw ConfigError("config: 'flight.log_dir' is required when loading a flight");
  }
  if (obj.contains("plan")) {
    const json& plan = obj["plan"];
    reject_unknown_keys(plan, {"cruise_speed", "altitude"}, "flight.plan.");
    f.plan = default_circuit_plan(get_double(plan, "cruise_speed", 5.0),
                                  get_double(plan, "altitude", 20.0));
  }
  if (obj.contains("sensors")) {
    const json& s = obj["sensors"];
    reject_unknown_keys(
        s, {"gyro_bias", "accel_bias", "fix_pos_std", "fix_vel_std", "fix_rate", "noise_scale"},
        "flight.sensors.");
    f.sensors.gyro_bias = get_vec3(s, "gyro_bias", f.sensors.gyro_bias);
    f.sensors.accel_bias = get_vec3(s, "accel_bias", f.sensors.accel_bias);
    f.sensors.fix_pos_std = get_vec3(s, "fix_pos_std", f.sensors.fix_pos_std);
    f.sensors.fix_vel_std = get_vec3(s, "fix_vel_std", f.sensors.fix_vel_std);
    f.sensors.fix_rate = get_double(s, "fix_rate", f.sensors.fix_rate);
    f.sensors.noise_scale = get_double(s, "noise_scale", f.sensors.noise_scale);
  }
}

DenialScenario parse_denial(const json& obj, const DenialScenario& fallback) {
  DenialScenario d = fallback;
  d.start = get_double(obj, "denial_start_s", d.start);
  d.duration = get_double(obj, "denial_duration_s", d.duration);
  return d;
}

ExperimentConfig parse(const json& root) {
  ExperimentConfig cfg;
  reject_unknown_keys(root,
                      {"noise", "flight", "init", "grid", "filter", "training", "validation",
                       "seeds", "output_dir"},
                      "");

  if (root.contains("noise")) {
    parse_noise(root["noise"], cfg.noise);
  }
  if (root.contains("flight")) {
    parse_flight(root["flight"], cfg.flight);
  }
  if (root.contains("init")) {
    const json& init = root["init"];
    reject_unknown_keys(init, {"state", "from_flight", "cov_scale"}, "init.");
    if (init.contains("state")) {
      const json& arr = init["state"];
      if (!arr.is_array() || arr.size() != 16) {
        throw ConfigError("config: 'init.state' must be an array of 16 numbers");
      }
      for (int i = 0; i < 16; ++i) {
        cfg.init_state(i) = arr[static_cast<std::size_t>(i)].get<double>();
      }
      cfg.init_from_flight = false;
    }
    if (init.contains("from_flight")) {
      cfg.init_from_flight = init["from_flight"].get<bool>();
    }
    cfg.init_cov_scale = get_double(init, "cov_scale", cfg.init_cov_scale);
  }
  if (root.contains("grid")) {
    const json& grid = root["grid"];
    reject_unknown_keys(grid, {"min", "max", "size"}, "grid.");
    const double lo = get_double(grid, "min", 2e-4);
    const double hi = get_double(grid, "max", 1.0);
    const int n = static_cast<int>(get_double(grid, "size", 40));
    try {
      cfg.grid = ToleranceGrid::linear(lo, hi, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: bad grid: ") + e.what());
    }
  }
  if (root.contains("filter")) {
    const json& f = root["filter"];
    reject_unknown_keys(f, {"bisection_tol", "bisection_max_iter", "theta_margin"}, "filter.");
    cfg.filter.bisection_tol = get_double(f, "bisection_tol", cfg.filter.bisection_tol);
    cfg.filter.bisection_max_iter =
        static_cast<int>(get_double(f, "bisection_max_iter", cfg.filter.bisection_max_iter));
    cfg.filter.theta_margin = get_double(f, "theta_margin", cfg.filter.theta_margin);
  }
  if (root.contains("training")) {
    const json& tr = root["training"];
    reject_unknown_keys(
        tr, {"length_s", "denial_start_s", "denial_duration_s", "a_priori_c"}, "training.");
    cfg.training.length_s = get_double(tr, "length_s", cfg.training.length_s);
    cfg.training.denial = parse_denial(tr, cfg.training.denial);
    cfg.training.a_priori_c = get_double(tr, "a_priori_c", cfg.training.a_priori_c);
  }
  if (root.contains("validation")) {
    const json& va = root["validation"];
    reject_unknown_keys(va, {"type", "denial_start_s", "denial_duration_s"}, "validation.");
    if (va.contains("type")) {
      const std::string type = va["type"].get<std::string>();
      if (type == "straight") {
        cfg.validation.type = ValidationType::Straight;
      } else if (type == "turn") {
        cfg.validation.type = ValidationType::Turn;
      } else {
        throw ConfigError("config: 'validation.type' must be 'straight' or 'turn'");
      }
    }
    cfg.validation.denial = parse_denial(va, cfg.validation.denial);
  }
  if (root.contains("seeds")) {
    const json& arr = root["seeds"];
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError("config: 'seeds' must be a non-empty array");
    }
    cfg.seeds.clear();
    for (const auto& s : arr) {
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (root.contains("output_dir")) {
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  return cfg;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  try {
    return parse(root);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_experiment_config(text);
}

}  // namespace robnav
