#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "rtrack/random.hpp"
#include "rtrack/vehicle.hpp"

using namespace rtrack;

TEST(ControlGridTest, Corners) {
  const Control last = action_index_to_control(120);
  EXPECT_DOUBLE_EQ(last.accel, 1.0);
  EXPECT_DOUBLE_EQ(last.steer, 1.0);
  const Control first = action_index_to_control(0);
  EXPECT_NEAR(first.accel, -0.363636, 1e-6);
  EXPECT_NEAR(first.steer, -0.818182, 1e-6);
}

TEST(ControlGridTest, RowMajorLayoutAndCardinality) {
  EXPECT_EQ(ControlGrid::kSize, 121);
  std::set<std::pair<double, double>> seen;
  for (int i = 1; i <= 11; ++i) {
    for (int j = 1; j <= 11; ++j) {
      const Control c = action_index_to_control(11 * (i - 1) + (j - 1));
      EXPECT_DOUBLE_EQ(c.accel, -0.5 + 1.5 * i / 11.0);
      EXPECT_DOUBLE_EQ(c.steer, -1.0 + 2.0 * j / 11.0);
      EXPECT_GE(c.accel, -0.5);
      EXPECT_LE(c.accel, 1.0);
      seen.insert({c.accel, c.steer});
    }
  }
  EXPECT_EQ(seen.size(), 121u);
}

TEST(ControlGridTest, OutOfRange) {
  EXPECT_THROW(action_index_to_control(-1), InvalidArgument);
  EXPECT_THROW(action_index_to_control(121), InvalidArgument);
}

TEST(Dynamics, ZeroSpeedFixedPoint) {
  VehicleState s;
  s.position = {3, 4};
  s.heading = 0.5;
  const auto n = step_dynamics(s, {0.0, 1.0}, VehicleParams{});
  EXPECT_EQ(n.position, s.position);
  EXPECT_EQ(n.heading, s.heading);
  EXPECT_EQ(n.speed, 0.0);
  EXPECT_EQ(n.prev_control, (Control{0.0, 1.0}));
}

TEST(Dynamics, StraightLine) {
  VehicleState s;
  s.speed = 1.0;
  const auto n = step_dynamics(s, {0.0, 0.0}, VehicleParams{});
  EXPECT_DOUBLE_EQ(n.position.x, 0.1);
  EXPECT_EQ(n.position.y, 0.0);
}

TEST(Dynamics, SteeringRate) {
  VehicleState s;
  s.speed = 1.0;
  const auto n = step_dynamics(s, {0.0, 1.0}, VehicleParams{});
  EXPECT_NEAR(n.heading, 0.1 * std::tan(std::numbers::pi / 6.0), 1e-15);
  EXPECT_NEAR(n.heading, 0.05774, 1e-5);
}

TEST(Dynamics, SpeedClampedNoReverse) {
  VehicleState s;
  s.speed = 0.1;
  auto n = step_dynamics(s, {-0.5, 0.0}, VehicleParams{});
  EXPECT_EQ(n.speed, 0.0);
  s.speed = 4.9;
  n = step_dynamics(s, {1.0, 0.0}, VehicleParams{});
  EXPECT_EQ(n.speed, 5.0);
}

TEST(Dynamics, RejectsControlOutsideSpace) {
  EXPECT_THROW(step_dynamics(VehicleState{}, {1.1, 0.0}, VehicleParams{}), InvalidArgument);
  EXPECT_THROW(step_dynamics(VehicleState{}, {0.0, -1.5}, VehicleParams{}), InvalidArgument);
}

TEST(Dynamics, RandomWalkInvariants) {
  const VehicleParams p;
  Rng rng(7);
  VehicleState s;
  const double max_turn = p.v_max / p.wheelbase * std::tan(p.steer_max) * p.dt;
  for (int i = 0; i < 100000; ++i) {
    const Control u = action_index_to_control(static_cast<int>(uniform_index(rng, 121)));
    const auto n = step_dynamics(s, u, p);
    EXPECT_GE(n.speed, 0.0);
    EXPECT_LE(n.speed, p.v_max);
    EXPECT_LE(std::abs(n.speed - s.speed), p.a_max * p.dt + 1e-12);
    EXPECT_LE(std::abs(wrap_angle(n.heading - s.heading)), max_turn + 1e-12);
    EXPECT_GT(n.heading, -std::numbers::pi);
    EXPECT_LE(n.heading, std::numbers::pi);
    s = n;
  }
}

TEST(Dynamics, ZeroSteerStaysOnHeadingLine) {
  VehicleState s;
  s.heading = 0.7;
  s.speed = 2.0;
  const VehicleParams p;
  for (int i = 0; i < 200; ++i) {
    s = step_dynamics(s, {0.5, 0.0}, p);
    const double residual = -std::sin(0.7) * s.position.x + std::cos(0.7) * s.position.y;
    EXPECT_NEAR(residual, 0.0, 1e-12 * (i + 1) * 10);
  }
}

TEST(VehicleParamsTest, Validation) {
  VehicleParams p;
  p.dt = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = VehicleParams{};
  p.steer_max = std::numbers::pi / 2;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(WrapAngle, Range) {
  EXPECT_DOUBLE_EQ(wrap_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(wrap_angle(3 * std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(wrap_angle(7.0), 7.0 - 2 * std::numbers::pi, 1e-15);
}
