#ifndef RTRACK_VEHICLE_HPP_
#define RTRACK_VEHICLE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "rtrack/errors.hpp"
#include "rtrack/geometry.hpp"

namespace rtrack {

/// Normalised controls: `accel` in [-1/2, 1] scales a_max, `steer` in [-1, 1]
/// scales the maximal steering angle.
struct Control {
  double accel = 0.0;
  double steer = 0.0;
  bool operator==(const Control&) const = default;
};

/// The finite action set: 11 acceleration levels x 11 steering levels,
/// u1_i = -0.5 + 1.5 i / 11 and u2_j = -1 + 2 j / 11 for i, j = 1..11.
struct ControlGrid {
  static constexpr int kLevels = 11;
  static constexpr int kSize = kLevels * kLevels;

  static constexpr double accel_level(int i) { return -0.5 + 1.5 * i / kLevels; }
  static constexpr double steer_level(int j) { return -1.0 + 2.0 * j / kLevels; }
};

/// Row-major: index = 11 (i - 1) + (j - 1).
inline Control action_index_to_control(int index) {
  if (index < 0 || index >= ControlGrid::kSize) {
    throw InvalidArgument("action index " + std::to_string(index) + " outside [0, 120]");
  }
  const int i = index / ControlGrid::kLevels + 1;
  const int j = index % ControlGrid::kLevels + 1;
  return {ControlGrid::accel_level(i), ControlGrid::steer_level(j)};
}

struct VehicleParams {
  double a_max = 5.0;                              // m/s^2
  double steer_max = std::numbers::pi / 6.0;       // rad
  double wheelbase = 1.0;                          // m
  double v_max = 5.0;                              // m/s
  double dt = 0.1;                                 // s

  void validate() const {
    if (!(a_max > 0.0) || !(steer_max > 0.0) || !(wheelbase > 0.0) || !(v_max > 0.0) || !(dt > 0.0)) {
      throw InvalidArgument("vehicle params must be strictly positive");
    }
    if (!(steer_max < std::numbers::pi / 2.0)) throw InvalidArgument("vehicle steer_max must be below pi/2");
  }
};

struct VehicleState {
  Vec2 position;
  double heading = 0.0;  // rad, (-pi, pi]
  double speed = 0.0;    // m/s, never negative
  Control prev_control;  // control applied in the previous step
};

/// One explicit-Euler step of the rear-axle kinematic bicycle model.
inline VehicleState step_dynamics(const VehicleState& s, const Control& u, const VehicleParams& p) {
  if (!(u.accel >= -0.5 && u.accel <= 1.0) || !(u.steer >= -1.0 && u.steer <= 1.0)) {
    throw InvalidArgument("control outside [-1/2, 1] x [-1, 1]");
  }
  const double accel = u.accel * p.a_max;
  const double steer_angle = u.steer * p.steer_max;
  VehicleState n;
  n.position = {s.position.x + s.speed * std::cos(s.heading) * p.dt,
                s.position.y + s.speed * std::sin(s.heading) * p.dt};
  n.heading = wrap_angle(s.heading + (s.speed / p.wheelbase) * std::tan(steer_angle) * p.dt);
  n.speed = std::clamp(s.speed + accel * p.dt, 0.0, p.v_max);
  n.prev_control = u;
  return n;
}

}  // namespace rtrack

#endif  // RTRACK_VEHICLE_HPP_
