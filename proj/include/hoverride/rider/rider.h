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

// Reduced-order rider standing with one foot on each platform.
//
// The rider's centre of mass is a linear inverted pendulum over the feet
// midpoint ("torso frame": origin at the feet midpoint, x along the torso
// heading). Balance works by shifting the support point (centre of
// pressure) under the feet:
//
//   com'' = (g / L) * (com - support) - base_accel
//
// Along x the support shift loads the toes and pitches both platforms, so
// the platforms accelerate underneath the rider. The balance gains are
// therefore scaled by how strongly the base responds to a support shift
// (`base_sensitivity_x`). Along y the support shift is realized by the leg
// length difference and has no effect on the platforms.

#ifndef HOVERRIDE_RIDER_RIDER_H_
#define HOVERRIDE_RIDER_RIDER_H_

#include <array>

#include <Eigen/Core>

#include "hoverride/platform/platform.h"

namespace hoverride {

inline constexpr double kGravity = 9.81;

enum Side : int { kLeft = 0, kRight = 1 };

// +1 for the left leg, -1 for the right leg.
constexpr double SideSign(int side) { return side == kLeft ? 1.0 : -1.0; }

// PD gains acting on the support point:
//   support = kp * (com - com_des) + kd * com_rate + feedforward * com_des
struct SupportGains {
  double kp = 0.0;  // [m/m]
  double kd = 0.0;  // [s]
  double feedforward = 0.0;
};

struct RiderParams {
  double mass = 32.0;                      // M [kg]
  double com_height = 0.9;                 // L [m]
  double com_time_constant = 0.15;         // closed-loop COM pole [s]
  double nominal_half_width = 0.2;         // [m]
  double toe_filter_time_constant = 0.05;  // [s]
  double hip_yaw_limit = 0.4;              // [rad]

  // Quasi-static base acceleration per metre of support shift along x.
  double base_sensitivity_x = 0.0;
  SupportGains balance_x;
  SupportGains balance_y;

  // Throws std::invalid_argument.
  void Validate() const;
};

// Rider parameters with balance gains placing both COM poles at
// -1 / com_time_constant for the given platform.
RiderParams MakeRiderParams(const PlatformParams& platform,
                            double mass = 32.0, double com_height = 0.9,
                            double com_time_constant = 0.15);

// Recomputes base_sensitivity_x and both balance gain sets in place.
void TuneBalance(const PlatformParams& platform, RiderParams* params);

struct RiderState {
  Eigen::Vector2d com = Eigen::Vector2d::Zero();       // torso frame [m]
  Eigen::Vector2d com_rate = Eigen::Vector2d::Zero();  // [m/s]
  double heading = 0.0;                                // phi [rad]
  double heading_rate = 0.0;                           // [rad/s]
  Eigen::Vector2d com_des = Eigen::Vector2d::Zero();
  std::array<double, 2> toe_pitch = {0.0, 0.0};       // q7 [rad]
  std::array<double, 2> toe_pitch_rate = {0.0, 0.0};  // [rad/s]

  bool operator==(const RiderState&) const = default;
};

// Per-foot actuation and measurement channels.
struct FootChannel {
  double toe_torque = 0.0;      // u5 [N m]
  double hip_yaw_torque = 0.0;  // u2 [N m]
  double toe_pitch = 0.0;       // q7 [rad]
  double hip_yaw = 0.0;         // q2 [rad]
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // torso frame [m]
};

struct FeetFrame {
  std::array<Eigen::Vector2d, 2> feet;  // torso frame
  Eigen::Vector2d midpoint;             // world frame
  double heading = 0.0;
};

// Torso heading implied by the two platform yaws (symmetric hips).
double TorsoHeading(const PlatformState& left, const PlatformState& right);

// Rigid transform of both platform origins into the torso frame (origin at
// the feet midpoint, x along `heading`).
FeetFrame FootKinematics(const PlatformState& left, const PlatformState& right,
                         double heading);

// Foot velocities in the (rotating) torso frame.
std::array<Eigen::Vector2d, 2> FootVelocities(const PlatformState& left,
                                              const PlatformState& right,
                                              double heading,
                                              double heading_rate);

// Hip yaw angles q2 = psi_i - heading.
std::array<double, 2> HipYawAngles(const PlatformState& left,
                                   const PlatformState& right, double heading);

// Support point commanded by the balance PD for the current state.
Eigen::Vector2d BalanceSupport(const RiderState& r, const RiderParams& p);

// Ankle torque on the rider equivalent to a support point:
// u_bal = -M * g * support.
Eigen::Vector2d BalanceTorque(const Eigen::Vector2d& support,
                              const RiderParams& p);

// Advances the COM pendulum with the balance PD closing the loop.
// `base_accel` is the feet-midpoint acceleration in the torso frame.
// Throws SimulationFault(kRiderFell) once |com| >= L.
RiderState ComDynamicsStep(const RiderState& r, const RiderParams& p,
                           const Eigen::Vector2d& base_accel, double dt);

// Same, with the support point given explicitly (e.g. recovered from the
// torques actually applied to the platforms).
RiderState ComDynamicsStep(const RiderState& r, const RiderParams& p,
                           const Eigen::Vector2d& base_accel,
                           const Eigen::Vector2d& support, double dt);

// Platform inputs produced by the rider: the toe torque plus the moment of
// half the body weight about each axle, and the hip yaw torque. Saturated.
std::array<PlatformInput, 2> ChannelsToContacts(
    const std::array<FootChannel, 2>& channels, const Eigen::Vector2d& com,
    const RiderParams& rider, const PlatformParams& platform);

// Support point implied by the pitch torques the rider applies.
double SupportFromPitchTorques(const std::array<PlatformInput, 2>& inputs,
                               const RiderParams& p);

// First-order toe follower: q7 tracks the platform pitch with the toe
// filter time constant.
void UpdateToes(const std::array<double, 2>& platform_pitch,
                const RiderParams& p, double dt, RiderState* r);

}  // namespace hoverride

#endif  // HOVERRIDE_RIDER_RIDER_H_
