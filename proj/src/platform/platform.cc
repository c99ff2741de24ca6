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

#include "hoverride/platform/platform.h"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Geometry>

#include "hoverride/common/integrators.h"

namespace hoverride {
namespace {

// Finite bounds beyond which the reduced model is meaningless.
constexpr double kMaxSpeed = 50.0;
constexpr double kMaxRate = 1e3;

std::string Describe(const PlatformState& s) {
  std::ostringstream os;
  os << "pitch=" << s.pitch << " pitch_rate=" << s.pitch_rate
     << " yaw=" << s.yaw << " yaw_rate=" << s.yaw_rate << " x=" << s.x
     << " y=" << s.y << " speed=" << s.speed;
  return os.str();
}

}  // namespace

void PlatformParams::Validate() const {
  const double values[] = {mass,          pitch_inertia, yaw_inertia,
                           stiffness,     pitch_damping, yaw_damping,
                           thrust_gain,   torque_limit,  wheel_radius,
                           deck_half_length, deck_half_width, deck_height};
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument("platform parameters must be positive");
    }
  }
}

PlatformVector<double> ToVector(const PlatformState& s) {
  PlatformVector<double> v;
  v << s.pitch, s.pitch_rate, s.yaw, s.yaw_rate, s.x, s.y, s.speed;
  return v;
}

PlatformState FromVector(const PlatformVector<double>& v) {
  return {v(0), v(1), v(2), v(3), v(4), v(5), v(6)};
}

PlatformState PlatformDerivative(const PlatformState& s, const PlatformInput& u,
                                 const PlatformParams& p) {
  const PlatformVector<double> x = ToVector(s);
  if (!x.allFinite() || !std::isfinite(u.pitch_torque) ||
      !std::isfinite(u.yaw_torque)) {
    throw SimulationFault(FaultKind::kNumericalDivergence,
                          "numerical divergence: non-finite platform state",
                          Describe(s));
  }
  return FromVector(PlatformRhs(x, u.pitch_torque, u.yaw_torque, p));
}

PlatformInput Saturate(const PlatformInput& u, double limit) {
  return {std::clamp(u.pitch_torque, -limit, limit),
          std::clamp(u.yaw_torque, -limit, limit)};
}

PlatformState StepPlatform(const PlatformState& s, const PlatformInput& u,
                           const PlatformParams& p, double dt) {
  if (!(dt > 0.0 && dt <= 2e-3)) {
    throw std::invalid_argument("platform step requires 0 < dt <= 2 ms");
  }
  const PlatformInput sat = Saturate(u, p.torque_limit);
  if (!std::isfinite(sat.pitch_torque) || !std::isfinite(sat.yaw_torque)) {
    throw SimulationFault(FaultKind::kNumericalDivergence,
                          "numerical divergence: non-finite platform input",
                          Describe(s));
  }
  const PlatformVector<double> x0 = ToVector(s);
  const PlatformVector<double> x1 =
      Rk4Step(x0, dt, [&](const PlatformVector<double>& x) {
        return PlatformRhs(x, sat.pitch_torque, sat.yaw_torque, p);
      });
  const PlatformState next = FromVector(x1);
  if (!x1.allFinite() || std::abs(next.pitch) >= 0.5 * std::numbers::pi ||
      std::abs(next.speed) > kMaxSpeed ||
      std::abs(next.pitch_rate) > kMaxRate ||
      std::abs(next.yaw_rate) > kMaxRate) {
    throw SimulationFault(FaultKind::kNumericalDivergence,
                          "numerical divergence: platform left its valid domain",
                          Describe(next));
  }
  return next;
}

Eigen::Vector2d PlatformVelocity(const PlatformState& s) {
  return s.speed * Eigen::Vector2d(std::cos(s.yaw), std::sin(s.yaw));
}

PlatformInput ContactToInputs(std::span<const ContactForce> contacts,
                              const PlatformParams& p) {
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  for (const auto& c : contacts) {
    if (!c.position.allFinite() || !c.force.allFinite()) {
      throw SimulationFault(FaultKind::kNumericalDivergence,
                            "numerical divergence: non-finite contact");
    }
    if (std::abs(c.position.x()) > p.deck_half_length ||
        std::abs(c.position.y()) > p.deck_half_width ||
        std::abs(c.position.z()) > p.deck_height) {
      throw std::invalid_argument("contact point outside the deck footprint");
    }
    moment += c.position.cross(-c.force);
  }
  return Saturate({moment.y(), moment.z()}, p.torque_limit);
}

}  // namespace hoverride
