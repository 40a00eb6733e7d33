#ifndef RTRACK_SCENARIO_IO_HPP_
#define RTRACK_SCENARIO_IO_HPP_

// Scenario / run configuration files.
//
//   {
//     "path_csv": "../data/figure8_path.csv",     relative to this file
//     "obstacles_csv": "../data/no_obstacles.csv",
//     "vehicle_params": {"a_max", "steer_max", "wheelbase", "v_max", "dt"},
//     "reward_params": {"alpha1".."alpha4", "beta1", "beta2", "lambda", "r_crash"},
//     "env_params": {"delta", "goal_tol", "crash_tol", "N_max", "seed",
//                    optional "lookahead", "grid_window", "grid_resolution",
//                    optional "rays": {"count", "nodes", "rho1", "rho2", "half_span"}},
//     optional "random_obstacles": {"count", "radius_min", "radius_max", "margin"},
//     optional "ppo": {any PpoConfig field by its JSON name}
//   }
//
// Unknown keys are rejected so that typos surface as errors.

#include <climits>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rtrack/env.hpp"
#include "rtrack/errors.hpp"
#include "rtrack/grid.hpp"
#include "rtrack/path.hpp"
#include "rtrack/ppo.hpp"

namespace rtrack {

struct RunConfig {
  Scenario scenario;
  PpoConfig ppo;
  std::filesystem::path source;         // config file, empty for built-in defaults
  std::filesystem::path path_csv;       // resolved
  std::filesystem::path obstacles_csv;  // resolved, may be empty
};

namespace detail {

using nlohmann::json;

class Section {
 public:
  Section(const json& j, std::string name, std::string file) : j_(j), name_(std::move(name)), file_(std::move(file)) {
    if (!j_.is_object()) fail(name_.empty() ? "top level must be a JSON object" : "field " + name_ + " must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail("field " + full(key) + " must be a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::int64_t integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) fail("field " + full(key) + " must be an integer");
    return v.get<std::int64_t>();
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) { return has(key) ? integer(key) : fallback; }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_unsigned()) fail("field " + full(key) + " must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) fail("field " + full(key) + " must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail("field " + full(key) + " must be a string");
    return v.get<std::string>();
  }

  Section child(const std::string& key) {
    const json& v = at(key);
    return Section(v, full(key), file_);
  }

  /// Throws on keys that were never read.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail("unknown field " + full(it.key()));
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(file_ + ": " + msg); }

 private:
  const json& at(const std::string& key) {
    if (!j_.contains(key)) fail("missing field " + full(key));
    seen_.insert(key);
    return j_.at(key);
  }
  std::string full(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

  const json& j_;
  std::string name_;
  std::string file_;
  std::set<std::string> seen_;
};

inline int to_int(std::int64_t v, const std::string& field, const std::string& file) {
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(file + ": field " + field + " out of range");
  return static_cast<int>(v);
}

inline void read_ppo(Section s, PpoConfig& p, const std::string& file) {
  p.steps_per_rollout = to_int(s.integer("n_steps", p.steps_per_rollout), "ppo.n_steps", file);
  p.n_envs = to_int(s.integer("n_envs", p.n_envs), "ppo.n_envs", file);
  p.epochs = to_int(s.integer("n_epochs", p.epochs), "ppo.n_epochs", file);
  p.minibatches = to_int(s.integer("n_minibatches", p.minibatches), "ppo.n_minibatches", file);
  p.clip_ratio = s.number("clip_range", p.clip_ratio);
  p.gamma = s.number("gamma", p.gamma);
  p.gae_lambda = s.number("gae_lambda", p.gae_lambda);
  p.learning_rate = s.number("learning_rate", p.learning_rate);
  p.ent_coef = s.number("ent_coef", p.ent_coef);
  p.vf_coef = s.number("vf_coef", p.vf_coef);
  p.max_grad_norm = s.number("max_grad_norm", p.max_grad_norm);
  p.adam_eps = s.number("adam_eps", p.adam_eps);
  p.total_timesteps = s.integer("total_timesteps", p.total_timesteps);
  p.threads = to_int(s.integer("threads", p.threads), "ppo.threads", file);
  p.obstacle_episode_fraction = s.number("obstacle_episode_fraction", p.obstacle_episode_fraction);
  p.curriculum_radius_min = s.number("curriculum_radius_min", p.curriculum_radius_min);
  p.curriculum_radius_max = s.number("curriculum_radius_max", p.curriculum_radius_max);
  p.curriculum_margin = s.number("curriculum_margin", p.curriculum_margin);
  p.offtrack_limit = s.number("offtrack_limit", p.offtrack_limit);
  p.stall_speed = s.number("stall_speed", p.stall_speed);
  p.stall_steps = to_int(s.integer("stall_steps", p.stall_steps), "ppo.stall_steps", file);
  p.random_start_fraction = s.number("random_start_fraction", p.random_start_fraction);
  p.bootstrap_on_truncation = s.boolean("bootstrap_on_truncation", p.bootstrap_on_truncation);
  s.finish();
}

}  // namespace detail

inline nlohmann::ordered_json ppo_to_json(const PpoConfig& p) {
  return {{"n_steps", p.steps_per_rollout},
          {"n_envs", p.n_envs},
          {"n_epochs", p.epochs},
          {"n_minibatches", p.minibatches},
          {"clip_range", p.clip_ratio},
          {"gamma", p.gamma},
          {"gae_lambda", p.gae_lambda},
          {"learning_rate", p.learning_rate},
          {"ent_coef", p.ent_coef},
          {"vf_coef", p.vf_coef},
          {"max_grad_norm", p.max_grad_norm},
          {"adam_eps", p.adam_eps},
          {"total_timesteps", p.total_timesteps},
          {"threads", p.threads},
          {"obstacle_episode_fraction", p.obstacle_episode_fraction},
          {"curriculum_radius_min", p.curriculum_radius_min},
          {"curriculum_radius_max", p.curriculum_radius_max},
          {"curriculum_margin", p.curriculum_margin},
          {"offtrack_limit", p.offtrack_limit},
          {"stall_speed", p.stall_speed},
          {"stall_steps", p.stall_steps},
          {"random_start_fraction", p.random_start_fraction},
          {"bootstrap_on_truncation", p.bootstrap_on_truncation}};
}

/// Parses configuration text. `base_dir` resolves relative CSV paths and
/// `origin` names the source in error messages.
inline RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir,
                                  const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  RunConfig rc;
  detail::Section top(j, "", origin);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : (base_dir / fp).lexically_normal();
  };
  rc.path_csv = resolve(top.string("path_csv"));
  const std::string obstacles = top.string("obstacles_csv");
  if (!obstacles.empty()) rc.obstacles_csv = resolve(obstacles);

  Scenario& sc = rc.scenario;
  {
    auto s = top.child("vehicle_params");
    sc.vehicle.a_max = s.number("a_max");
    sc.vehicle.steer_max = s.number("steer_max");
    sc.vehicle.wheelbase = s.number("wheelbase");
    sc.vehicle.v_max = s.number("v_max");
    sc.vehicle.dt = s.number("dt");
    s.finish();
  }
  {
    auto s = top.child("reward_params");
    sc.reward.alpha1 = s.number("alpha1");
    sc.reward.alpha2 = s.number("alpha2");
    sc.reward.alpha3 = s.number("alpha3");
    sc.reward.alpha4 = s.number("alpha4");
    sc.reward.beta1 = s.number("beta1");
    sc.reward.beta2 = s.number("beta2");
    sc.reward.lambda = s.number("lambda");
    sc.reward.r_crash = s.number("r_crash");
    s.finish();
  }
  {
    auto s = top.child("env_params");
    EnvParams& e = sc.env;
    e.delta = s.number("delta");
    e.goal_tol = s.number("goal_tol");
    e.crash_tol = s.number("crash_tol");
    e.max_steps = detail::to_int(s.integer("N_max"), "env_params.N_max", origin);
    e.seed = s.unsigned_integer("seed");
    e.lookahead = s.number("lookahead", e.lookahead);
    e.grid_window = s.number("grid_window", e.grid_window);
    e.grid_resolution = s.number("grid_resolution", e.grid_resolution);
    if (s.has("rays")) {
      auto r = s.child("rays");
      e.rays.rays = detail::to_int(r.integer("count", e.rays.rays), "env_params.rays.count", origin);
      e.rays.nodes = detail::to_int(r.integer("nodes", e.rays.nodes), "env_params.rays.nodes", origin);
      e.rays.inner_radius = r.number("rho1", e.rays.inner_radius);
      e.rays.outer_radius = r.number("rho2", e.rays.outer_radius);
      e.rays.half_span = r.number("half_span", e.rays.half_span);
      r.finish();
    }
    s.finish();
  }
  if (top.has("random_obstacles")) {
    auto s = top.child("random_obstacles");
    RandomObstacles& r = sc.random_obstacles;
    r.count = detail::to_int(s.integer("count"), "random_obstacles.count", origin);
    r.radius_min = s.number("radius_min");
    r.radius_max = s.number("radius_max");
    r.margin = s.number("margin", r.margin);
    s.finish();
  }
  if (top.has("ppo")) detail::read_ppo(top.child("ppo"), rc.ppo, origin);
  top.finish();

  try {
    sc.path = read_path_csv(rc.path_csv.string());
    if (!rc.obstacles_csv.empty()) sc.obstacles = read_obstacles_csv(rc.obstacles_csv.string());
  } catch (const LoadError& e) {
    throw ConfigError(origin + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  try {
    sc.validate();
    rc.ppo.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return rc;
}

inline RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError(file.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig rc = parse_run_config(ss.str(), file.parent_path(), file.string());
  rc.source = file;
  return rc;
}

/// Effective configuration with absolute CSV paths; loadable again with
/// load_run_config.
inline nlohmann::ordered_json run_config_to_json(const RunConfig& rc) {
  const Scenario& sc = rc.scenario;
  const auto abs = [](const std::filesystem::path& p) {
    return p.empty() ? std::string() : std::filesystem::absolute(p).lexically_normal().string();
  };
  nlohmann::ordered_json j;
  j["path_csv"] = abs(rc.path_csv);
  j["obstacles_csv"] = abs(rc.obstacles_csv);
  j["vehicle_params"] = {{"a_max", sc.vehicle.a_max},
                         {"steer_max", sc.vehicle.steer_max},
                         {"wheelbase", sc.vehicle.wheelbase},
                         {"v_max", sc.vehicle.v_max},
                         {"dt", sc.vehicle.dt}};
  j["reward_params"] = {{"alpha1", sc.reward.alpha1}, {"alpha2", sc.reward.alpha2}, {"alpha3", sc.reward.alpha3},
                        {"alpha4", sc.reward.alpha4}, {"beta1", sc.reward.beta1},   {"beta2", sc.reward.beta2},
                        {"lambda", sc.reward.lambda}, {"r_crash", sc.reward.r_crash}};
  const EnvParams& e = sc.env;
  j["env_params"] = {{"delta", e.delta},
                     {"goal_tol", e.goal_tol},
                     {"crash_tol", e.crash_tol},
                     {"N_max", e.max_steps},
                     {"seed", e.seed},
                     {"lookahead", e.lookahead},
                     {"grid_window", e.grid_window},
                     {"grid_resolution", e.grid_resolution},
                     {"rays",
                      {{"count", e.rays.rays},
                       {"nodes", e.rays.nodes},
                       {"rho1", e.rays.inner_radius},
                       {"rho2", e.rays.outer_radius},
                       {"half_span", e.rays.half_span}}}};
  const RandomObstacles& r = sc.random_obstacles;
  j["random_obstacles"] = {
      {"count", r.count}, {"radius_min", r.radius_min}, {"radius_max", r.radius_max}, {"margin", r.margin}};
  j["ppo"] = ppo_to_json(rc.ppo);
  return j;
}

}  // namespace rtrack

#endif  // RTRACK_SCENARIO_IO_HPP_
