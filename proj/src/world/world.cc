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

#include "hoverride/world/world.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hoverride {
namespace {

Eigen::Vector2d MidpointVelocity(const std::array<PlatformState, 2>& p) {
  return 0.5 * (PlatformVelocity(p[kLeft]) + PlatformVelocity(p[kRight]));
}

void ApplyDisturbances(World* w) {
  const double heading = TorsoHeading(w->platforms[kLeft], w->platforms[kRight]);
  for (Disturbance& d : w->disturbances) {
    if (d.applied || w->time < d.trigger_time - 1e-9) continue;
    d.applied = true;
    if (d.target == Disturbance::Target::kRiderCom) {
      w->rider.com_rate += ToFrame(d.impulse / w->rider_params.mass, heading);
      continue;
    }
    const int side =
        d.target == Disturbance::Target::kLeftPlatform ? kLeft : kRight;
    PlatformState& p = w->platforms[side];
    const Eigen::Vector2d before = MidpointVelocity(w->platforms);
    // The wheels only transmit the component along the platform heading.
    p.speed += d.impulse.dot(HeadingVector(p.yaw)) / w->platform_params.mass;
    const Eigen::Vector2d after = MidpointVelocity(w->platforms);
    // The rider's inertial velocity is unchanged, so relative to the moving
    // feet midpoint it changes by the opposite amount.
    w->rider.com_rate -= ToFrame(Eigen::Vector2d(after - before), heading);
  }
}

}  // namespace

World MakeWorld(const PlatformParams& platform, const RiderParams& rider,
                const InitialConditions& init,
                std::shared_ptr<const ObstacleList> obstacles,
                std::vector<Disturbance> disturbances, std::uint64_t seed) {
  platform.Validate();
  rider.Validate();
  World w;
  w.platform_params = platform;
  w.rider_params = rider;
  if (obstacles) w.obstacles = std::move(obstacles);
  w.disturbances = std::move(disturbances);
  w.seed = seed;
  const Eigen::Vector2d mid = init.pose.position();
  const Eigen::Vector2d offsets[2] = {{0.5 * init.x_gap, init.half_width},
                                      {-0.5 * init.x_gap, -init.half_width}};
  for (int i : {kLeft, kRight}) {
    const Eigen::Vector2d pos = mid + FromFrame(offsets[i], init.pose.heading);
    PlatformState& s = w.platforms[i];
    s.x = pos.x();
    s.y = pos.y();
    s.yaw = init.pose.heading;
    s.speed = init.speed;
  }
  w.rider.com = init.com;
  w.rider.heading = init.pose.heading;
  return w;
}

TorsoKinematics Torso(const World& w) {
  const PlatformState& l = w.platforms[kLeft];
  const PlatformState& r = w.platforms[kRight];
  TorsoKinematics t;
  const Eigen::Vector2d mid = 0.5 * (l.position() + r.position());
  t.pose = {mid.x(), mid.y(), WrapAngle(TorsoHeading(l, r))};
  t.velocity = MidpointVelocity(w.platforms);
  t.speed = t.velocity.dot(HeadingVector(t.pose.heading));
  t.yaw_rate = 0.5 * (l.yaw_rate + r.yaw_rate);
  return t;
}

World WorldStep(const World& w, const ControlCommand& cmd, double dt) {
  World n = w;
  try {
    ApplyDisturbances(&n);
    const PlatformState& l = n.platforms[kLeft];
    const PlatformState& r = n.platforms[kRight];
    const double heading = TorsoHeading(l, r);
    const FeetFrame frame = FootKinematics(l, r, heading);

    std::array<FootChannel, 2> channels;
    for (int i : {kLeft, kRight}) {
      channels[i].toe_torque = cmd.legs[i].toe;
      channels[i].hip_yaw_torque = cmd.legs[i].hip_yaw;
      channels[i].toe_pitch = n.rider.toe_pitch[i];
      channels[i].position = frame.feet[i];
    }
    const std::array<PlatformInput, 2> inputs = ChannelsToContacts(
        channels, n.rider.com, n.rider_params, n.platform_params);

    const Eigen::Vector2d v0 = MidpointVelocity(n.platforms);
    for (int i : {kLeft, kRight}) {
      n.platforms[i] =
          StepPlatform(n.platforms[i], inputs[i], n.platform_params, dt);
    }
    const Eigen::Vector2d v1 = MidpointVelocity(n.platforms);
    const Eigen::Vector2d base_accel =
        ToFrame(Eigen::Vector2d((v1 - v0) / dt), heading);

    n.rider.com_des = cmd.com_des;
    const Eigen::Vector2d support(
        SupportFromPitchTorques(inputs, n.rider_params),
        BalanceSupport(n.rider, n.rider_params).y());
    n.rider =
        ComDynamicsStep(n.rider, n.rider_params, base_accel, support, dt);
    UpdateToes({n.platforms[kLeft].pitch, n.platforms[kRight].pitch},
               n.rider_params, dt, &n.rider);
    n.rider.heading = TorsoHeading(n.platforms[kLeft], n.platforms[kRight]);
    n.rider.heading_rate =
        0.5 * (n.platforms[kLeft].yaw_rate + n.platforms[kRight].yaw_rate);
  } catch (const SimulationFault& f) {
    std::string dump = DumpState(w);
    if (!f.state_dump().empty()) dump += "\ndetail: " + f.state_dump();
    throw SimulationFault(f.kind(), f.what(), std::move(dump));
  }
  n.tick = w.tick + 1;
  n.time = static_cast<double>(n.tick) * dt;
  return n;
}

std::string DumpState(const World& w) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "tick=%lld time=%.6f\n",
                static_cast<long long>(w.tick), w.time);
  out += buf;
  const char* names[2] = {"left", "right"};
  for (int i : {kLeft, kRight}) {
    const PlatformState& p = w.platforms[i];
    std::snprintf(buf, sizeof(buf),
                  "%s: pitch=%.9g pitch_rate=%.9g yaw=%.9g yaw_rate=%.9g "
                  "x=%.9g y=%.9g speed=%.9g\n",
                  names[i], p.pitch, p.pitch_rate, p.yaw, p.yaw_rate, p.x, p.y,
                  p.speed);
    out += buf;
  }
  const RiderState& r = w.rider;
  std::snprintf(buf, sizeof(buf),
                "rider: com=(%.9g, %.9g) com_rate=(%.9g, %.9g) heading=%.9g "
                "com_des=(%.9g, %.9g) toe=(%.9g, %.9g)",
                r.com.x(), r.com.y(), r.com_rate.x(), r.com_rate.y(),
                r.heading, r.com_des.x(), r.com_des.y(), r.toe_pitch[0],
                r.toe_pitch[1]);
  out += buf;
  return out;
}

Polygon PlatformFootprint(const PlatformState& s, const PlatformParams& p) {
  return MakeBox(s.position(), 2.0 * p.deck_half_length,
                 2.0 * p.deck_half_width, s.yaw);
}

RangeScan SimulateScan(const World& w, const Pose2& sensor, int beam_count,
                       double max_range, double range_noise_std,
                       std::mt19937_64* rng) {
  return SimulateScan(*w.obstacles, sensor, beam_count, max_range,
                      range_noise_std, rng);
}

RangeScan SimulateScan(const ObstacleList& obstacles, const Pose2& sensor,
                       int beam_count, double max_range,
                       double range_noise_std, std::mt19937_64* rng) {
  if (beam_count <= 0 || !(max_range > 0.0)) {
    throw std::invalid_argument("scan needs beams and a positive range");
  }
  if (range_noise_std > 0.0 && rng == nullptr) {
    throw std::invalid_argument("range noise requires a generator");
  }
  constexpr double kMinRange = 1e-6;
  RangeScan scan;
  scan.origin = sensor;
  scan.max_range = max_range;
  scan.angles.resize(beam_count);
  scan.ranges.resize(beam_count);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Vector2d origin = sensor.position();
  for (int k = 0; k < beam_count; ++k) {
    const double angle = -std::numbers::pi + 2.0 * std::numbers::pi * k /
                                                 beam_count;
    const Eigen::Vector2d dir = HeadingVector(sensor.heading + angle);
    double range = max_range;
    for (const Obstacle& o : obstacles) {
      if (o.low) continue;
      if (auto t = RayPolygonIntersection(origin, dir, o.polygon)) {
        range = std::min(range, *t);
      }
    }
    if (range_noise_std > 0.0) range += range_noise_std * normal(*rng);
    scan.angles[k] = angle;
    scan.ranges[k] = std::clamp(range, kMinRange, max_range);
  }
  return scan;
}

OdometryEstimator::OdometryEstimator(const NoiseConfig& noise,
                                     std::uint64_t seed)
    : noise_(noise), rng_(seed) {
  if (!(noise.filter_time_constant > 0.0) || noise.speed_std < 0.0 ||
      noise.yaw_rate_std < 0.0 || noise.position_std < 0.0 ||
      noise.heading_std < 0.0 || noise.range_std < 0.0) {
    throw std::invalid_argument("invalid odometry noise configuration");
  }
}

double OdometryEstimator::Gaussian(double std) {
  // Always draw so the stream does not depend on which channels are noisy.
  const double z = normal_(rng_);
  return std * z;
}

EstimatedOdometry OdometryEstimator::Update(const World& w, double dt) {
  const TorsoKinematics truth = Torso(w);
  EstimatedOdometry out;
  out.noise = noise_;
  out.pose.x = truth.pose.x + Gaussian(noise_.position_std);
  out.pose.y = truth.pose.y + Gaussian(noise_.position_std);
  out.pose.heading = WrapAngle(truth.pose.heading + Gaussian(noise_.heading_std));
  const double speed_raw = truth.speed + Gaussian(noise_.speed_std);
  const double yaw_rate_raw = truth.yaw_rate + Gaussian(noise_.yaw_rate_std);
  if (!initialized_) {
    speed_filtered_ = speed_raw;
    yaw_rate_filtered_ = yaw_rate_raw;
    initialized_ = true;
  } else {
    const double alpha = 1.0 - std::exp(-dt / noise_.filter_time_constant);
    speed_filtered_ += alpha * (speed_raw - speed_filtered_);
    yaw_rate_filtered_ += alpha * (yaw_rate_raw - yaw_rate_filtered_);
  }
  out.speed = speed_filtered_;
  out.yaw_rate = yaw_rate_filtered_;
  return out;
}

ControlMeasurements MeasureForControl(const World& w, double speed_est,
                                      double yaw_rate_est) {
  const PlatformState& l = w.platforms[kLeft];
  const PlatformState& r = w.platforms[kRight];
  const double heading = TorsoHeading(l, r);
  const double heading_rate = 0.5 * (l.yaw_rate + r.yaw_rate);
  ControlMeasurements m;
  m.feet = FootKinematics(l, r, heading).feet;
  m.foot_velocity = FootVelocities(l, r, heading, heading_rate);
  m.hip_yaw = HipYawAngles(l, r, heading);
  m.rider = w.rider;
  m.speed_est = speed_est;
  m.yaw_rate_est = yaw_rate_est;
  return m;
}

}  // namespace hoverride
