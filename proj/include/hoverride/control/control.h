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

// Decoupled PD controller hierarchy for riding a pair of platforms:
//
//  * x-axis: keeps the platforms side by side by pitching them differentially
//    through the toes (outer loop: desired toe pitch difference from the
//    foot x-gap; inner loop: toe torque).
//  * y-axis: keeps each foot at +/- y_offset by yawing the hips.
//  * velocity: shifts the desired COM forward in proportion to speed error.
//  * turning: hip yaw and differential toe torque from the yaw-rate error,
//    plus a lean of the desired COM into the turn.
//
// All corrections are summed onto the nominal balancing controller's
// channels by IntegrateTorques.

#ifndef HOVERRIDE_CONTROL_CONTROL_H_
#define HOVERRIDE_CONTROL_CONTROL_H_

#include <array>

#include <Eigen/Core>

#include "hoverride/rider/rider.h"

namespace hoverride {

struct Gains {
  double kp_x = 2.0;          // [rad/m]
  double kp_toe_diff = 5.0;   // [N m/rad]
  double kd_toe_diff = 1.0;   // [N m s/rad]
  double kp_y = 8.0;          // [rad/m]
  double kp_hip_yaw = 20.0;   // [N m/rad]
  double kp_vel = 0.1;        // [m per m/s]
  double kp_yaw = 15.0;       // [N m per rad/s]
  double kp_pitch = 2.0;      // [N m per rad/s]
  double kp_shift = 0.5;      // [-]
  double kd_damping = 0.05;   // [N m s/rad]

  // Throws std::invalid_argument when any gain is negative or non-finite.
  void Validate() const;
};

struct CommandLimits {
  double max_speed = 2.0;        // |v_d| [m/s]
  double max_yaw_rate = 1.5;     // |psi_dot_d| [rad/s]
  double max_com_shift_x = 0.05;  // |com_des.x| [m]
  double channel_torque = 25.0;  // per joint [N m]
  double hip_yaw_limit = 0.4;    // |q2_des| [rad]
};

struct Setpoints {
  double speed = 0.0;     // v_d
  double yaw_rate = 0.0;  // psi_dot_d
  double y_offset = 0.2;  // stance half-width target
};

Setpoints ClampSetpoints(const Setpoints& s, const CommandLimits& limits);

// Motor torques of one leg: u1..u5.
struct LegCommand {
  double hip_roll = 0.0;   // u1
  double hip_yaw = 0.0;    // u2
  double hip_pitch = 0.0;  // u3
  double knee = 0.0;       // u4
  double toe = 0.0;        // u5

  bool operator==(const LegCommand&) const = default;
};

struct ControlCommand {
  std::array<LegCommand, 2> legs;
  Eigen::Vector2d com_des = Eigen::Vector2d::Zero();

  bool operator==(const ControlCommand&) const = default;
};

struct XAxisInputs {
  std::array<double, 2> foot_x = {0.0, 0.0};
  std::array<double, 2> foot_x_rate = {0.0, 0.0};
  std::array<double, 2> toe_pitch = {0.0, 0.0};
  std::array<double, 2> toe_pitch_rate = {0.0, 0.0};
};

struct XAxisOutput {
  double desired_toe_diff = 0.0;  // q_dtoe^des
  double error = 0.0;             // e_dtoe
  double error_rate = 0.0;
  double toe_torque = 0.0;  // u5^dtoe, added left, subtracted right
};

XAxisOutput XController(const XAxisInputs& in, const Gains& g);

struct YAxisInputs {
  std::array<double, 2> foot_y = {0.0, 0.0};
  std::array<double, 2> hip_yaw = {0.0, 0.0};
};

struct YAxisOutput {
  std::array<double, 2> desired_hip_yaw = {0.0, 0.0};
  std::array<double, 2> hip_yaw_torque = {0.0, 0.0};  // u2^y
};

YAxisOutput YController(const YAxisInputs& in, double y_offset, const Gains& g,
                        const CommandLimits& limits = {});

// Desired forward COM offset, clamped to +/- limits.max_com_shift_x.
double VelocityController(double speed_est, double speed_des, const Gains& g,
                          const CommandLimits& limits = {});

struct TurnOutput {
  double error = 0.0;
  double hip_yaw_torque = 0.0;  // u2^turn
  double toe_torque = 0.0;      // u5^turn
  double tilt = 0.0;            // lean angle
  double com_des_y = 0.0;
};

TurnOutput TurningController(double yaw_rate_est, double yaw_rate_des,
                             double speed_est, double com_height,
                             const Gains& g);

// Nominal balancing controller output: per-leg channels and the support
// point it realizes along x.
struct NominalChannels {
  std::array<LegCommand, 2> legs;
  double support_x = 0.0;
};

// Toe torques that put the rider's support point where the balance PD
// wants it for the desired COM; each toe cancels the weight moment of its
// own lever arm so both platforms receive the same pitch torque.
NominalChannels NominalBalancer(const RiderState& rider,
                                const Eigen::Vector2d& com_des,
                                const std::array<Eigen::Vector2d, 2>& feet,
                                const RiderParams& p);

struct Corrections {
  double toe_diff = 0.0;                          // u5^dtoe
  std::array<double, 2> hip_yaw_y = {0.0, 0.0};   // u2^y
  double hip_yaw_turn = 0.0;                      // u2^turn
  double toe_turn = 0.0;                          // u5^turn
  std::array<double, 2> toe_pitch_rate = {0.0, 0.0};
  Eigen::Vector2d com_des = Eigen::Vector2d::Zero();
};

// Sums corrections onto the nominal channels and saturates each joint.
//   u2 = u2~ + u2^y + u2^turn
//   u5 = u5~ +/- u5^dtoe -/+ u5^turn - kd_damping * q7'
// The x-axis correction is added on the left toe. The turning correction
// is added on the right toe: with positive yaw rate to the left, a yaw-rate
// deficit must speed up the right (outer) platform.
ControlCommand IntegrateTorques(const NominalChannels& nominal,
                                const Corrections& c, const Gains& g,
                                const CommandLimits& limits = {});

struct ControlMeasurements {
  std::array<Eigen::Vector2d, 2> feet;           // torso frame
  std::array<Eigen::Vector2d, 2> foot_velocity;  // torso frame
  std::array<double, 2> hip_yaw = {0.0, 0.0};
  RiderState rider;
  double speed_est = 0.0;
  double yaw_rate_est = 0.0;
};

struct ControlDiagnostics {
  XAxisOutput x;
  YAxisOutput y;
  TurnOutput turn;
  double com_des_x = 0.0;
  NominalChannels nominal;
};

// One control tick: every sub-controller plus torque integration.
ControlCommand ComputeControl(const ControlMeasurements& m,
                              const Setpoints& setpoints, const Gains& g,
                              const RiderParams& rider,
                              const CommandLimits& limits = {},
                              ControlDiagnostics* diagnostics = nullptr);

}  // namespace hoverride

#endif  // HOVERRIDE_CONTROL_CONTROL_H_
