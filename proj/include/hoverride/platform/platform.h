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

// Closed-loop model of one self-balancing wheeled platform ("shoe").
//
// The platform carries an internal pitch stabilizer, so pitch behaves as a
// damped spring driven by the rider's toe torque, while yaw only sees ground
// damping. Forward acceleration is proportional to pitch and the wheels
// cannot slip sideways:
//
//   J_theta * theta'' = -c1 * theta - c2 * theta' + u_theta
//   J_psi   * psi''   = -c3 * psi' + u_psi
//   x' = v cos(psi),  y' = v sin(psi),  m * v' = c4 * theta
//
// Sign conventions: body frame x forward, y left, z up. Positive pitch is
// nose-down (rotation about +y), which accelerates the platform forward.

#ifndef HOVERRIDE_PLATFORM_PLATFORM_H_
#define HOVERRIDE_PLATFORM_PLATFORM_H_

#include <cmath>
#include <span>

#include <Eigen/Core>

#include "hoverride/common/fault.h"

namespace hoverride {

struct PlatformParams {
  double mass = 3.0;            // m [kg]
  double pitch_inertia = 0.02;  // J_theta [kg m^2]
  double yaw_inertia = 0.01;    // J_psi [kg m^2]
  double stiffness = 20.0;      // c1 [N m / rad]
  double pitch_damping = 1.0;   // c2 [N m s / rad]
  double yaw_damping = 0.5;     // c3 [N m s / rad]
  double thrust_gain = 200.0;   // c4 [N / rad]
  double torque_limit = 15.0;   // u_max [N m]
  double wheel_radius = 0.1;    // metadata only

  // Deck footprint, used for contact validation and collision checks.
  double deck_half_length = 0.15;
  double deck_half_width = 0.06;
  double deck_height = 0.12;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct PlatformInput {
  double pitch_torque = 0.0;  // u_theta
  double yaw_torque = 0.0;    // u_psi
};

struct PlatformState {
  double pitch = 0.0;       // theta
  double pitch_rate = 0.0;  // theta'
  double yaw = 0.0;         // psi
  double yaw_rate = 0.0;    // psi'
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;  // v

  Eigen::Vector2d position() const { return {x, y}; }
  bool operator==(const PlatformState&) const = default;
};

inline constexpr int kPlatformStateSize = 7;

template <typename Scalar>
using PlatformVector = Eigen::Matrix<Scalar, kPlatformStateSize, 1>;

PlatformVector<double> ToVector(const PlatformState& s);
PlatformState FromVector(const PlatformVector<double>& v);

// Right-hand side of the platform ODE. Templated on the scalar so it can be
// evaluated with dual numbers or other Eigen-compatible scalars.
template <typename Derived>
PlatformVector<typename Derived::Scalar> PlatformRhs(
    const Eigen::MatrixBase<Derived>& s, typename Derived::Scalar pitch_torque,
    typename Derived::Scalar yaw_torque, const PlatformParams& p) {
  using std::cos;
  using std::sin;
  using Scalar = typename Derived::Scalar;
  PlatformVector<Scalar> d;
  d(0) = s(1);
  d(1) = (-Scalar(p.stiffness) * s(0) - Scalar(p.pitch_damping) * s(1) +
          pitch_torque) /
         Scalar(p.pitch_inertia);
  d(2) = s(3);
  d(3) = (-Scalar(p.yaw_damping) * s(3) + yaw_torque) / Scalar(p.yaw_inertia);
  d(4) = s(6) * cos(s(2));
  d(5) = s(6) * sin(s(2));
  d(6) = Scalar(p.thrust_gain) * s(0) / Scalar(p.mass);
  return d;
}

// Time derivative of the state, packed into a PlatformState. Throws
// SimulationFault(kNumericalDivergence) on non-finite input.
PlatformState PlatformDerivative(const PlatformState& s, const PlatformInput& u,
                                 const PlatformParams& p);

PlatformInput Saturate(const PlatformInput& u, double limit);

// One RK4 step of length dt (0 < dt <= 2 ms). Inputs are saturated first.
PlatformState StepPlatform(const PlatformState& s, const PlatformInput& u,
                           const PlatformParams& p, double dt);

// World-frame velocity of the platform origin.
Eigen::Vector2d PlatformVelocity(const PlatformState& s);

// A contact between the rider's foot and the deck. `position` is relative to
// the platform origin in the platform frame; `force` is the force acting ON
// THE RIDER, so the platform receives -force.
struct ContactForce {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
};

// Pitch/yaw torques produced on the platform by the given contacts,
// saturated to the platform torque limit.
PlatformInput ContactToInputs(std::span<const ContactForce> contacts,
                              const PlatformParams& p);

}  // namespace hoverride

#endif  // HOVERRIDE_PLATFORM_PLATFORM_H_
