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

#include "hoverride/control/control.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoverride {

void Gains::Validate() const {
  const double values[] = {kp_x,   kp_toe_diff, kd_toe_diff, kp_y,     kp_hip_yaw,
                           kp_vel, kp_yaw,      kp_pitch,    kp_shift, kd_damping};
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("controller gains must be finite and >= 0");
    }
  }
}

Setpoints ClampSetpoints(const Setpoints& s, const CommandLimits& limits) {
  Setpoints out = s;
  out.speed = std::clamp(s.speed, -limits.max_speed, limits.max_speed);
  out.yaw_rate =
      std::clamp(s.yaw_rate, -limits.max_yaw_rate, limits.max_yaw_rate);
  return out;
}

XAxisOutput XController(const XAxisInputs& in, const Gains& g) {
  XAxisOutput out;
  const double gap = in.foot_x[kLeft] - in.foot_x[kRight];
  const double gap_rate = in.foot_x_rate[kLeft] - in.foot_x_rate[kRight];
  out.desired_toe_diff = -g.kp_x * gap;
  out.error = (in.toe_pitch[kLeft] - in.toe_pitch[kRight]) - out.desired_toe_diff;
  out.error_rate = (in.toe_pitch_rate[kLeft] - in.toe_pitch_rate[kRight]) +
                   g.kp_x * gap_rate;
  out.toe_torque = -g.kp_toe_diff * out.error - g.kd_toe_diff * out.error_rate;
  return out;
}

YAxisOutput YController(const YAxisInputs& in, double y_offset, const Gains& g,
                        const CommandLimits& limits) {
  YAxisOutput out;
  for (int i : {kLeft, kRight}) {
    // Left foot regulates to +y_offset, right foot to -y_offset.
    const double err = in.foot_y[i] - SideSign(i) * y_offset;
    out.desired_hip_yaw[i] = std::clamp(-g.kp_y * err, -limits.hip_yaw_limit,
                                        limits.hip_yaw_limit);
    out.hip_yaw_torque[i] =
        -g.kp_hip_yaw * (in.hip_yaw[i] - out.desired_hip_yaw[i]);
  }
  return out;
}

double VelocityController(double speed_est, double speed_des, const Gains& g,
                          const CommandLimits& limits) {
  return std::clamp(-g.kp_vel * (speed_est - speed_des),
                    -limits.max_com_shift_x, limits.max_com_shift_x);
}

TurnOutput TurningController(double yaw_rate_est, double yaw_rate_des,
                             double speed_est, double com_height,
                             const Gains& g) {
  TurnOutput out;
  out.error = yaw_rate_est - yaw_rate_des;
  out.hip_yaw_torque = -g.kp_yaw * out.error;
  out.toe_torque = -g.kp_pitch * out.error;
  out.tilt = std::atan(yaw_rate_est * speed_est / 9.81);
  out.com_des_y = -g.kp_shift * (com_height * out.tilt);
  return out;
}

NominalChannels NominalBalancer(const RiderState& rider,
                                const Eigen::Vector2d& com_des,
                                const std::array<Eigen::Vector2d, 2>& feet,
                                const RiderParams& p) {
  RiderState target = rider;
  target.com_des = com_des;
  NominalChannels out;
  out.support_x = BalanceSupport(target, p).x();
  const double half_weight = 0.5 * p.mass * kGravity;
  for (int i : {kLeft, kRight}) {
    out.legs[i].toe =
        half_weight * (out.support_x - rider.com.x() + feet[i].x());
  }
  return out;
}

ControlCommand IntegrateTorques(const NominalChannels& nominal,
                                const Corrections& c, const Gains& g,
                                const CommandLimits& limits) {
  const double lim = limits.channel_torque;
  auto sat = [lim](double u) { return std::clamp(u, -lim, lim); };
  ControlCommand cmd;
  cmd.com_des = c.com_des;
  for (int i : {kLeft, kRight}) {
    const LegCommand& n = nominal.legs[i];
    const double sign = SideSign(i);
    LegCommand& leg = cmd.legs[i];
    leg.hip_roll = sat(n.hip_roll);
    leg.hip_yaw = sat(n.hip_yaw + c.hip_yaw_y[i] + c.hip_yaw_turn);
    // The lateral COM target travels in com_des; the reduced rider realizes
    // it through its lateral support, so u3/u4 keep their nominal values.
    leg.hip_pitch = sat(n.hip_pitch);
    leg.knee = sat(n.knee);
    leg.toe = sat(n.toe + sign * c.toe_diff - sign * c.toe_turn -
                  g.kd_damping * c.toe_pitch_rate[i]);
  }
  return cmd;
}

ControlCommand ComputeControl(const ControlMeasurements& m,
                              const Setpoints& setpoints, const Gains& g,
                              const RiderParams& rider,
                              const CommandLimits& limits,
                              ControlDiagnostics* diagnostics) {
  const Setpoints sp = ClampSetpoints(setpoints, limits);

  XAxisInputs xin;
  YAxisInputs yin;
  for (int i : {kLeft, kRight}) {
    xin.foot_x[i] = m.feet[i].x();
    xin.foot_x_rate[i] = m.foot_velocity[i].x();
    xin.toe_pitch[i] = m.rider.toe_pitch[i];
    xin.toe_pitch_rate[i] = m.rider.toe_pitch_rate[i];
    yin.foot_y[i] = m.feet[i].y();
    yin.hip_yaw[i] = m.hip_yaw[i];
  }
  ControlDiagnostics d;
  d.x = XController(xin, g);
  d.y = YController(yin, sp.y_offset, g, limits);
  d.com_des_x = VelocityController(m.speed_est, sp.speed, g, limits);
  d.turn = TurningController(m.yaw_rate_est, sp.yaw_rate, m.speed_est,
                             rider.com_height, g);

  const Eigen::Vector2d com_des(d.com_des_x, d.turn.com_des_y);
  d.nominal = NominalBalancer(m.rider, com_des, m.feet, rider);

  Corrections c;
  c.toe_diff = d.x.toe_torque;
  c.hip_yaw_y = d.y.hip_yaw_torque;
  c.hip_yaw_turn = d.turn.hip_yaw_torque;
  c.toe_turn = d.turn.toe_torque;
  c.toe_pitch_rate = m.rider.toe_pitch_rate;
  c.com_des = com_des;
  if (diagnostics != nullptr) *diagnostics = d;
  return IntegrateTorques(d.nominal, c, g, limits);
}

}  // namespace hoverride
