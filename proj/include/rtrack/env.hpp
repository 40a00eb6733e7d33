#ifndef RTRACK_ENV_HPP_
#define RTRACK_ENV_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtrack/errors.hpp"
#include "rtrack/grid.hpp"
#include "rtrack/path.hpp"
#include "rtrack/random.hpp"
#include "rtrack/vehicle.hpp"

namespace rtrack {

/// Network input x = (x1, ..., x7).
struct Observation {
  static constexpr std::size_t kSize = 7;

  double cross_track = 0.0;        // x1, clipped to [-delta, delta]
  double speed_error = 0.0;        // x2, v_{k+1} - v
  double heading_cos = 0.0;        // x3
  double prev_accel = 0.0;         // x4
  double prev_steer = 0.0;         // x5
  double obstacle_cos = 0.0;       // x6
  double obstacle_distance = 0.0;  // x7

  std::array<double, kSize> values() const {
    return {cross_track, speed_error, heading_cos, prev_accel, prev_steer, obstacle_cos, obstacle_distance};
  }
  static Observation from(const std::array<double, kSize>& x) { return {x[0], x[1], x[2], x[3], x[4], x[5], x[6]}; }
  bool operator==(const Observation&) const = default;
};

struct RewardParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 1.0;
  double alpha4 = 1.5;
  double beta1 = 0.25;
  double beta2 = 0.25;
  double lambda = 0.75;
  double r_crash = -250.0;

  void validate() const {
    if (alpha1 < 0 || alpha2 < 0 || alpha3 < 0 || alpha4 < 0) throw InvalidArgument("reward alphas must be >= 0");
    if (!(beta1 > 0.0) || !(beta2 > 0.0)) throw InvalidArgument("reward betas must be > 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("reward lambda must lie in [0, 1]");
  }
};

struct EnvParams {
  double delta = 2.0;       // cross-track clip, m
  double goal_tol = 1.0;    // m
  double crash_tol = 0.25;  // x7 threshold, m
  int max_steps = 2000;     // N_max
  std::uint64_t seed = 0;
  double lookahead = 3.0;   // m, reference segment selection
  RayConfig rays;
  double grid_window = 16.0;     // m, side of the vehicle-centred cost map
  double grid_resolution = 0.25; // m per cell

  void validate() const {
    if (!(delta > 0.0)) throw InvalidArgument("env delta must be > 0");
    if (!(goal_tol > 0.0)) throw InvalidArgument("env goal_tol must be > 0");
    if (!(crash_tol >= 0.0)) throw InvalidArgument("env crash_tol must be >= 0");
    if (max_steps < 1) throw InvalidArgument("env N_max must be >= 1");
    if (!(lookahead >= 0.0)) throw InvalidArgument("env lookahead must be >= 0");
    if (!(grid_window > 0.0) || !(grid_resolution > 0.0)) throw InvalidArgument("env grid window/resolution must be > 0");
    rays.validate();
  }
};

/// Circular obstacles dropped onto the path at reset, positions drawn from the
/// reset seed. Centres are uniform in arc length on [margin, length - margin].
struct RandomObstacles {
  int count = 0;
  double radius_min = 0.75;
  double radius_max = 0.75;
  double margin = 8.0;  // m of path length kept clear at both ends

  void validate() const {
    if (count < 0) throw InvalidArgument("random_obstacles.count must be >= 0");
    if (!(radius_min > 0.0) || radius_max < radius_min) {
      throw InvalidArgument("random_obstacles radii must satisfy 0 < radius_min <= radius_max");
    }
    if (!(margin >= 0.0)) throw InvalidArgument("random_obstacles.margin must be >= 0");
  }
};

struct Scenario {
  Path path;
  std::vector<Obstacle> obstacles;
  VehicleParams vehicle;
  RewardParams reward;
  EnvParams env;
  RandomObstacles random_obstacles;

  void validate() const {
    vehicle.validate();
    reward.validate();
    env.validate();
    random_obstacles.validate();
    path.check_speed_limit(vehicle.v_max);
    for (const auto& o : obstacles) validate_obstacle(o);
  }
};

/// Assembles the network input from the vehicle state, the active reference
/// segment and the range scan.
inline Observation build_observation(const VehicleState& state, const ReferenceSegment& seg, const RangeScan& scan,
                                     const Path& path, double delta) {
  Observation obs;
  obs.cross_track = std::clamp(seg.cross_track_error, -delta, delta);
  obs.speed_error = path[seg.k + 1].target_speed - state.speed;
  const Vec2 driving = unit_vector(state.heading);
  obs.heading_cos = cos_between(driving, seg.end - seg.start);
  obs.prev_accel = state.prev_control.accel;
  obs.prev_steer = state.prev_control.steer;
  const std::size_t nearest = scan.argmin();
  // The ray is the driving direction rotated by its vehicle-frame angle.
  obs.obstacle_cos = std::cos(scan.ray_angles[nearest]);
  obs.obstacle_distance = scan.distances[nearest];
  return obs;
}

struct RewardTerms {
  double path_following = 0.0;     // r_pf
  double avoidance = 0.0;          // r_ac
  double crash = 0.0;              // r_crash when crashed, else 0
  double total() const { return path_following + avoidance + crash; }
};

inline RewardTerms reward_terms(const Observation& obs, bool crashed, const RewardParams& p, double rho1,
                                double rho2) {
  const double r1 = p.alpha1 * std::exp(-obs.cross_track * obs.cross_track / (2.0 * p.beta1));
  const double r2 = p.alpha2 * std::exp(-obs.speed_error * obs.speed_error / (2.0 * p.beta2));
  const double r3 = p.alpha3 * obs.heading_cos;
  RewardTerms t;
  t.path_following = -1.0 + (1.0 + r2 * r3) * (1.0 + r1);
  t.avoidance = obs.obstacle_distance <= p.lambda * (rho2 - rho1) ? -p.alpha4 * obs.obstacle_cos : 0.0;
  t.crash = crashed ? p.r_crash : 0.0;
  return t;
}

inline double compute_reward(const Observation& obs, bool crashed, const RewardParams& p, double rho1, double rho2) {
  return reward_terms(obs, crashed, p, rho1, rho2).total();
}

enum class Termination { kNone, kGoal, kCrash, kTimeout };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kGoal: return "goal";
    case Termination::kCrash: return "crash";
    case Termination::kTimeout: return "timeout";
    case Termination::kNone: break;
  }
  return "none";
}

struct StepInfo {
  double cross_track_error = 0.0;  // unclipped e_x
  std::size_t segment = 0;
  RangeScan scan;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  Termination cause = Termination::kNone;
  StepInfo info;
};

/// Reactive path tracking environment over one scenario.
class Environment {
 public:
  explicit Environment(Scenario scenario) : scenario_(std::move(scenario)) { scenario_.validate(); }

  const Scenario& scenario() const { return scenario_; }
  const VehicleState& state() const { return state_; }
  const std::vector<Obstacle>& episode_obstacles() const { return obstacles_; }
  const Observation& observation() const { return obs_; }
  int steps() const { return steps_; }
  bool terminated() const { return terminated_; }

  /// Reset overrides for training curricula. Random obstacles are kept
  /// `margin` metres of path length ahead of the start and before the end.
  struct ResetOptions {
    RandomObstacles obstacles;
    std::size_t start_waypoint = 0;
    double start_speed = 0.0;
  };

  /// Starts an episode at the first waypoint facing the second one.
  Observation reset(std::uint64_t seed) {
    ResetOptions opts;
    opts.obstacles = scenario_.random_obstacles;
    return reset(seed, opts);
  }

  Observation reset(std::uint64_t seed, const ResetOptions& opts) {
    const RandomObstacles& extra = opts.obstacles;
    const std::size_t start_waypoint = opts.start_waypoint;
    extra.validate();
    const Path& path = scenario_.path;
    if (start_waypoint >= path.segment_count()) {
      throw InvalidArgument("start waypoint " + std::to_string(start_waypoint) + " out of range");
    }
    if (!(opts.start_speed >= 0.0 && opts.start_speed <= scenario_.vehicle.v_max)) {
      throw InvalidArgument("start speed outside [0, v_max]");
    }
    obstacles_ = scenario_.obstacles;
    Rng rng(seed);
    const double s0 = path.arc_length(start_waypoint);
    for (int i = 0; i < extra.count; ++i) {
      const double room = path.length() - s0;
      const double lo = s0 + std::min(extra.margin, 0.5 * room);
      const double hi = path.length() - std::min(extra.margin, 0.5 * room);
      const double s = uniform(rng, lo, hi);
      const double r = uniform(rng, extra.radius_min, extra.radius_max);
      obstacles_.push_back(Circle{path.point_at(s), r});
    }
    state_ = VehicleState{};
    state_.position = path[start_waypoint].position;
    const Vec2 dir = path[start_waypoint + 1].position - path[start_waypoint].position;
    state_.heading = std::atan2(dir.y, dir.x);
    state_.speed = opts.start_speed;
    segment_ = start_waypoint;
    steps_ = 0;
    terminated_ = false;
    started_ = true;
    sense();
    return obs_;
  }

  StepResult step(int action_index) {
    if (!started_) throw InvalidState("step called before reset");
    if (terminated_) throw InvalidState("step called after episode termination");
    const Control u = action_index_to_control(action_index);
    state_ = step_dynamics(state_, u, scenario_.vehicle);
    ++steps_;
    sense();

    const auto& env = scenario_.env;
    const bool crashed = obs_.obstacle_distance <= env.crash_tol;
    const Path& path = scenario_.path;
    const bool at_goal = segment_ + 1 == path.segment_count() &&
                         (state_.position - path.back().position).norm() <= env.goal_tol;

    StepResult r;
    r.observation = obs_;
    r.reward = compute_reward(obs_, crashed, scenario_.reward, env.rays.inner_radius, env.rays.outer_radius);
    if (crashed) {
      r.cause = Termination::kCrash;
    } else if (at_goal) {
      r.cause = Termination::kGoal;
    } else if (steps_ >= env.max_steps) {
      r.cause = Termination::kTimeout;
    }
    r.terminated = r.cause != Termination::kNone;
    terminated_ = r.terminated;
    r.info = info_;
    return r;
  }

  const StepInfo& info() const { return info_; }

 private:
  void sense() {
    const auto& env = scenario_.env;
    const OccupancyGrid grid =
        rasterize_obstacles(obstacles_, centered_grid_spec(state_.position, env.grid_window, env.grid_resolution));
    info_.scan = cast_rays(grid, state_.position, state_.heading, env.rays);
    const ReferenceSegment seg = select_reference_segment(scenario_.path, state_.position, segment_, env.lookahead);
    segment_ = seg.k;
    info_.segment = seg.k;
    info_.cross_track_error = seg.cross_track_error;
    obs_ = build_observation(state_, seg, info_.scan, scenario_.path, env.delta);
  }

  Scenario scenario_;
  std::vector<Obstacle> obstacles_;
  VehicleState state_;
  Observation obs_;
  StepInfo info_;
  std::size_t segment_ = 0;
  int steps_ = 0;
  bool terminated_ = false;
  bool started_ = false;
};

}  // namespace rtrack

#endif  // RTRACK_ENV_HPP_
