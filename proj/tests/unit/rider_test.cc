// Copyright 2026 The Hoverride Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hoverride/rider/rider.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hoverride/common/geometry.h"

namespace hoverride {
namespace {

PlatformState At(double x, double y, double yaw = 0.0) {
  PlatformState s;
  s.x = x;
  s.y = y;
  s.yaw = yaw;
  return s;
}

TEST(FootKinematics, SymmetricStance) {
  const FeetFrame f = FootKinematics(At(0, 0.2), At(0, -0.2), 0.0);
  EXPECT_DOUBLE_EQ(f.feet[kLeft].x(), 0.0);
  EXPECT_DOUBLE_EQ(f.feet[kLeft].y(), 0.2);
  EXPECT_DOUBLE_EQ(f.feet[kRight].y(), -0.2);
  EXPECT_DOUBLE_EQ(f.midpoint.norm(), 0.0);
}

TEST(FootKinematics, LeftAhead) {
  const FeetFrame f = FootKinematics(At(0.1, 0.2), At(0, -0.2), 0.0);
  EXPECT_DOUBLE_EQ(f.feet[kLeft].x() - f.feet[kRight].x(), 0.1);
}

TEST(FootKinematics, RotatedTorso) {
  const FeetFrame f = FootKinematics(At(1.1, 2.0), At(0.9, 2.0), M_PI / 2);
  EXPECT_NEAR(f.feet[kLeft].x(), 0.0, 1e-15);
  EXPECT_NEAR(f.feet[kLeft].y(), -0.1, 1e-15);
}

TEST(FootKinematics, IsometryProperty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const PlatformState l = At(u(rng), u(rng));
    const PlatformState r = At(u(rng), u(rng));
    const FeetFrame f = FootKinematics(l, r, u(rng));
    EXPECT_NEAR((f.feet[kLeft] - f.feet[kRight]).norm(),
                (l.position() - r.position()).norm(), 1e-12);
  }
}

TEST(FootVelocities, MatchFiniteDifference) {
  PlatformState l = At(0.05, 0.2, 0.1);
  PlatformState r = At(-0.02, -0.18, -0.05);
  l.speed = 1.0;
  r.speed = 0.7;
  const double heading = 0.02;
  const double heading_rate = 0.3;
  const double h = 1e-6;
  auto advance = [h](PlatformState s) {
    s.x += h * s.speed * std::cos(s.yaw);
    s.y += h * s.speed * std::sin(s.yaw);
    return s;
  };
  const FeetFrame f0 = FootKinematics(l, r, heading);
  const FeetFrame f1 =
      FootKinematics(advance(l), advance(r), heading + h * heading_rate);
  const auto v = FootVelocities(l, r, heading, heading_rate);
  for (int i : {kLeft, kRight}) {
    const Eigen::Vector2d fd = (f1.feet[i] - f0.feet[i]) / h;
    EXPECT_NEAR((v[i] - fd).norm(), 0.0, 1e-5);
  }
}

TEST(HipYaw, RelativeToTorso) {
  const auto q = HipYawAngles(At(0, 0, 0.3), At(0, 0, -0.1), 0.1);
  EXPECT_DOUBLE_EQ(q[kLeft], 0.2);
  EXPECT_DOUBLE_EQ(q[kRight], -0.2);
}

// Closes the quasi-static base acceleration loop the world provides:
// a support shift s accelerates the feet by base_sensitivity_x * s.
RiderState SimulateBalance(RiderState r, const RiderParams& p, double duration,
                           double dt = 1e-3) {
  const int n = static_cast<int>(std::lround(duration / dt));
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d s = BalanceSupport(r, p);
    const Eigen::Vector2d accel(p.base_sensitivity_x * s.x(), 0.0);
    r = ComDynamicsStep(r, p, accel, s, dt);
  }
  return r;
}

TEST(ComDynamics, EquilibriumUnchanged) {
  const RiderParams p = MakeRiderParams(PlatformParams{});
  RiderState r;
  const RiderState next = ComDynamicsStep(r, p, Eigen::Vector2d::Zero(), 1e-3);
  EXPECT_EQ(next, r);
}

TEST(ComDynamics, DisplacedComReturns) {
  const RiderParams p = MakeRiderParams(PlatformParams{});
  for (const Eigen::Vector2d& d :
       {Eigen::Vector2d(0.02, 0.0), Eigen::Vector2d(0.0, 0.02)}) {
    RiderState r;
    r.com = d;
    r = SimulateBalance(r, p, 2.0);
    EXPECT_LT(r.com.norm(), 2e-3);
  }
}

TEST(ComDynamics, ZeroGainsDiverge) {
  RiderParams p = MakeRiderParams(PlatformParams{});
  p.balance_x = {};
  p.balance_y = {};
  RiderState r;
  r.com = {0.01, 0.0};
  double prev = r.com.x();
  bool fell = false;
  try {
    for (int i = 0; i < 5000; ++i) {
      r = ComDynamicsStep(r, p, Eigen::Vector2d::Zero(), 1e-3);
      ASSERT_GT(r.com.x(), prev);
      prev = r.com.x();
    }
  } catch (const SimulationFault& f) {
    EXPECT_EQ(f.kind(), FaultKind::kRiderFell);
    fell = true;
  }
  EXPECT_TRUE(fell);
}

TEST(ComDynamics, BalancePropertyFromRandomOffsets) {
  const RiderParams p = MakeRiderParams(PlatformParams{});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> radius(0.0, 0.03);
  for (int i = 0; i < 50; ++i) {
    RiderState r;
    const double a = angle(rng);
    r.com = radius(rng) * Eigen::Vector2d(std::cos(a), std::sin(a));
    r = SimulateBalance(r, p, 3.0);
    EXPECT_LT(r.com.norm(), 1e-3);
  }
}

TEST(ComDynamics, FallFaultCarriesState) {
  const RiderParams p = MakeRiderParams(PlatformParams{});
  RiderState r;
  r.com = {0.899, 0.0};
  r.com_rate = {5.0, 0.0};
  try {
    ComDynamicsStep(r, p, Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                    1e-3);
    FAIL() << "expected a fall";
  } catch (const SimulationFault& f) {
    EXPECT_EQ(f.kind(), FaultKind::kRiderFell);
    EXPECT_NE(std::string(f.what()).find("rider fell"), std::string::npos);
    EXPECT_FALSE(f.state_dump().empty());
  }
}

std::array<FootChannel, 2> Channels(double u5_left, double u5_right,
                                    double x_left = 0.0, double x_right = 0.0) {
  std::array<FootChannel, 2> c;
  c[kLeft].toe_torque = u5_left;
  c[kRight].toe_torque = u5_right;
  c[kLeft].position = {x_left, 0.2};
  c[kRight].position = {x_right, -0.2};
  return c;
}

TEST(ChannelsToContacts, CenteredWeightGivesZero) {
  const RiderParams r = MakeRiderParams(PlatformParams{});
  const auto u = ChannelsToContacts(Channels(0, 0), Eigen::Vector2d::Zero(), r,
                                    PlatformParams{});
  EXPECT_DOUBLE_EQ(u[kLeft].pitch_torque, 0.0);
  EXPECT_DOUBLE_EQ(u[kRight].pitch_torque, 0.0);
}

TEST(ChannelsToContacts, WeightShiftMoment) {
  const RiderParams r = MakeRiderParams(PlatformParams{});
  const auto u = ChannelsToContacts(Channels(0, 0), {0.02, 0.0}, r,
                                    PlatformParams{});
  const double expected = 32.0 * 9.81 * 0.02 / 2.0;
  EXPECT_NEAR(u[kLeft].pitch_torque, expected, 1e-12);
  EXPECT_NEAR(u[kRight].pitch_torque, expected, 1e-12);
  EXPECT_NEAR(expected, 3.14, 0.01);
}

TEST(ChannelsToContacts, ToeTorquePassThrough) {
  const RiderParams r = MakeRiderParams(PlatformParams{});
  const auto u = ChannelsToContacts(Channels(1, -1), Eigen::Vector2d::Zero(),
                                    r, PlatformParams{});
  EXPECT_DOUBLE_EQ(u[kLeft].pitch_torque, 1.0);
  EXPECT_DOUBLE_EQ(u[kRight].pitch_torque, -1.0);
}

TEST(ChannelsToContacts, MatchesContactGeometry) {
  // Each foot carries half the weight; the support force on the rider is
  // upward, so the platform receives the downward reaction.
  const PlatformParams pp;
  const RiderParams r = MakeRiderParams(pp);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.06, 0.06);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector2d com(u(rng), u(rng));
    const auto ch = Channels(0, 0, u(rng), u(rng));
    const auto inputs = ChannelsToContacts(ch, com, r, pp);
    for (int side : {kLeft, kRight}) {
      const ContactForce c{{com.x() - ch[side].position.x(), 0.0, 0.0},
                           {0.0, 0.0, 0.5 * r.mass * kGravity}};
      const PlatformInput oracle = ContactToInputs({&c, 1}, pp);
      EXPECT_NEAR(inputs[side].pitch_torque, oracle.pitch_torque, 1e-12);
    }
  }
}

TEST(SupportFromPitchTorques, InvertsWeightShift) {
  const RiderParams r = MakeRiderParams(PlatformParams{});
  const auto u = ChannelsToContacts(Channels(0, 0), {0.013, 0.0}, r,
                                    PlatformParams{});
  EXPECT_NEAR(SupportFromPitchTorques(u, r), 0.013, 1e-15);
}

TEST(UpdateToes, FirstOrderFollower) {
  RiderParams p = MakeRiderParams(PlatformParams{});
  RiderState r;
  const double dt = 1e-3;
  const int n = static_cast<int>(std::lround(3.0 * p.toe_filter_time_constant / dt));
  for (int i = 0; i < n; ++i) UpdateToes({0.1, -0.1}, p, dt, &r);
  EXPECT_NEAR(r.toe_pitch[kLeft], 0.1 * (1.0 - std::exp(-3.0)), 1e-12);
  EXPECT_NEAR(r.toe_pitch[kRight], -0.1 * (1.0 - std::exp(-3.0)), 1e-12);
  EXPECT_GT(r.toe_pitch_rate[kLeft], 0.0);
}

TEST(RiderParams, Validation) {
  RiderParams p = MakeRiderParams(PlatformParams{});
  EXPECT_NO_THROW(p.Validate());
  p.com_height = -1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace hoverride
