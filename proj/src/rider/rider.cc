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
#include <sstream>
#include <stdexcept>

#include "hoverride/common/geometry.h"
#include "hoverride/common/integrators.h"

namespace hoverride {

void RiderParams::Validate() const {
  if (!(mass > 0.0) || !(com_height > 0.0) || !(com_time_constant > 0.0) ||
      !(nominal_half_width > 0.0) || !(toe_filter_time_constant > 0.0) ||
      !(hip_yaw_limit > 0.0)) {
    throw std::invalid_argument("rider parameters must be positive");
  }
  if (!(base_sensitivity_x >= 0.0)) {
    throw std::invalid_argument("base sensitivity must be non-negative");
  }
}

void TuneBalance(const PlatformParams& platform, RiderParams* params) {
  RiderParams& p = *params;
  const double omega2 = kGravity / p.com_height;
  const double pole = 1.0 / p.com_time_constant;
  // Quasi-static: support shift s -> toe moment (M g / 2) s per platform ->
  // pitch moment / c1 -> acceleration c4 * pitch / m.
  p.base_sensitivity_x = platform.thrust_gain * p.mass * kGravity /
                         (2.0 * platform.mass * platform.stiffness);
  auto gains_for = [&](double beta) {
    return SupportGains{(omega2 + pole * pole) / beta, 2.0 * pole / beta,
                        omega2 / beta};
  };
  p.balance_x = gains_for(omega2 + p.base_sensitivity_x);
  p.balance_y = gains_for(omega2);
}

RiderParams MakeRiderParams(const PlatformParams& platform, double mass,
                            double com_height, double com_time_constant) {
  RiderParams p;
  p.mass = mass;
  p.com_height = com_height;
  p.com_time_constant = com_time_constant;
  TuneBalance(platform, &p);
  return p;
}

double TorsoHeading(const PlatformState& left, const PlatformState& right) {
  return 0.5 * (left.yaw + right.yaw);
}

FeetFrame FootKinematics(const PlatformState& left, const PlatformState& right,
                         double heading) {
  FeetFrame f;
  f.heading = heading;
  f.midpoint = 0.5 * (left.position() + right.position());
  f.feet[kLeft] = ToFrame(left.position() - f.midpoint, heading);
  f.feet[kRight] = ToFrame(right.position() - f.midpoint, heading);
  return f;
}

std::array<Eigen::Vector2d, 2> FootVelocities(const PlatformState& left,
                                              const PlatformState& right,
                                              double heading,
                                              double heading_rate) {
  const FeetFrame f = FootKinematics(left, right, heading);
  const Eigen::Vector2d v_mid =
      0.5 * (PlatformVelocity(left) + PlatformVelocity(right));
  const Eigen::Vector2d v[2] = {PlatformVelocity(left),
                                PlatformVelocity(right)};
  std::array<Eigen::Vector2d, 2> out;
  for (int i : {kLeft, kRight}) {
    // d/dt R(-phi) r = R(-phi) r' - phi' * J * R(-phi) r, J = [0 -1; 1 0].
    const Eigen::Vector2d& r = f.feet[i];
    out[i] = ToFrame(v[i] - v_mid, heading) -
             heading_rate * Eigen::Vector2d(-r.y(), r.x());
  }
  return out;
}

std::array<double, 2> HipYawAngles(const PlatformState& left,
                                   const PlatformState& right, double heading) {
  return {WrapAngle(left.yaw - heading), WrapAngle(right.yaw - heading)};
}

Eigen::Vector2d BalanceSupport(const RiderState& r, const RiderParams& p) {
  const Eigen::Vector2d err = r.com - r.com_des;
  return {p.balance_x.kp * err.x() + p.balance_x.kd * r.com_rate.x() +
              p.balance_x.feedforward * r.com_des.x(),
          p.balance_y.kp * err.y() + p.balance_y.kd * r.com_rate.y() +
              p.balance_y.feedforward * r.com_des.y()};
}

Eigen::Vector2d BalanceTorque(const Eigen::Vector2d& support,
                              const RiderParams& p) {
  return -p.mass * kGravity * support;
}

namespace {

using ComVector = Eigen::Matrix<double, 4, 1>;

RiderState CheckedCom(RiderState next, const RiderParams& p) {
  if (!next.com.allFinite() || !next.com_rate.allFinite()) {
    throw SimulationFault(FaultKind::kNumericalDivergence,
                          "numerical divergence: non-finite rider state");
  }
  if (next.com.norm() >= p.com_height) {
    std::ostringstream os;
    os << "com=(" << next.com.x() << ", " << next.com.y() << ") com_rate=("
       << next.com_rate.x() << ", " << next.com_rate.y() << ")";
    throw SimulationFault(FaultKind::kRiderFell,
                          "rider fell: COM offset reached the COM height",
                          os.str());
  }
  return next;
}

template <typename SupportFn>
RiderState IntegrateCom(const RiderState& r, const RiderParams& p,
                        const Eigen::Vector2d& base_accel, double dt,
                        SupportFn&& support_of) {
  const double omega2 = kGravity / p.com_height;
  ComVector x;
  x << r.com, r.com_rate;
  const ComVector next = Rk4Step(x, dt, [&](const ComVector& s) {
    const Eigen::Vector2d com = s.head<2>();
    const Eigen::Vector2d rate = s.tail<2>();
    ComVector d;
    d << rate, omega2 * (com - support_of(com, rate)) - base_accel;
    return d;
  });
  RiderState out = r;
  out.com = next.head<2>();
  out.com_rate = next.tail<2>();
  return CheckedCom(out, p);
}

}  // namespace

RiderState ComDynamicsStep(const RiderState& r, const RiderParams& p,
                           const Eigen::Vector2d& base_accel, double dt) {
  return IntegrateCom(r, p, base_accel, dt,
                      [&](const Eigen::Vector2d& com,
                          const Eigen::Vector2d& rate) {
                        RiderState stage = r;
                        stage.com = com;
                        stage.com_rate = rate;
                        return BalanceSupport(stage, p);
                      });
}

RiderState ComDynamicsStep(const RiderState& r, const RiderParams& p,
                           const Eigen::Vector2d& base_accel,
                           const Eigen::Vector2d& support, double dt) {
  return IntegrateCom(
      r, p, base_accel, dt,
      [&](const Eigen::Vector2d&, const Eigen::Vector2d&) { return support; });
}

std::array<PlatformInput, 2> ChannelsToContacts(
    const std::array<FootChannel, 2>& channels, const Eigen::Vector2d& com,
    const RiderParams& rider, const PlatformParams& platform) {
  const double half_weight = 0.5 * rider.mass * kGravity;
  std::array<PlatformInput, 2> out;
  for (int i : {kLeft, kRight}) {
    const FootChannel& c = channels[i];
    out[i] = Saturate({c.toe_torque + half_weight * (com.x() - c.position.x()),
                       c.hip_yaw_torque},
                      platform.torque_limit);
  }
  return out;
}

double SupportFromPitchTorques(const std::array<PlatformInput, 2>& inputs,
                               const RiderParams& p) {
  return (inputs[kLeft].pitch_torque + inputs[kRight].pitch_torque) /
         (p.mass * kGravity);
}

void UpdateToes(const std::array<double, 2>& platform_pitch,
                const RiderParams& p, double dt, RiderState* r) {
  const double alpha = 1.0 - std::exp(-dt / p.toe_filter_time_constant);
  for (int i : {kLeft, kRight}) {
    const double next =
        r->toe_pitch[i] + alpha * (platform_pitch[i] - r->toe_pitch[i]);
    r->toe_pitch_rate[i] = (next - r->toe_pitch[i]) / dt;
    r->toe_pitch[i] = next;
  }
}

}  // namespace hoverride
