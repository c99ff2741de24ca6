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

#ifndef HOVERRIDE_WORLD_WORLD_H_
#define HOVERRIDE_WORLD_WORLD_H_

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoverride/common/geometry.h"
#include "hoverride/control/control.h"
#include "hoverride/platform/platform.h"
#include "hoverride/rider/rider.h"

namespace hoverride {

// A static obstacle. Low obstacles sit below the range sensor plane and the
// rider's body; only the platforms can hit them.
struct Obstacle {
  Polygon polygon;
  bool low = false;
};

using ObstacleList = std::vector<Obstacle>;

struct Disturbance {
  enum class Target { kLeftPlatform, kRightPlatform, kRiderCom };

  Target target = Target::kLeftPlatform;
  Eigen::Vector2d impulse = Eigen::Vector2d::Zero();  // world frame [N s]
  double trigger_time = 0.0;                          // [s]
  bool applied = false;
};

struct World {
  PlatformParams platform_params;
  RiderParams rider_params;
  std::array<PlatformState, 2> platforms;
  RiderState rider;
  std::shared_ptr<const ObstacleList> obstacles =
      std::make_shared<const ObstacleList>();
  std::vector<Disturbance> disturbances;
  std::int64_t tick = 0;
  double time = 0.0;
  std::uint64_t seed = 0;
};

struct InitialConditions {
  Pose2 pose;                 // feet midpoint and heading
  double half_width = 0.2;    // lateral foot offset [m]
  double x_gap = 0.0;         // left foot ahead of right [m]
  double speed = 0.0;         // both platforms [m/s]
  Eigen::Vector2d com = Eigen::Vector2d::Zero();
};

World MakeWorld(const PlatformParams& platform, const RiderParams& rider,
                const InitialConditions& init,
                std::shared_ptr<const ObstacleList> obstacles = nullptr,
                std::vector<Disturbance> disturbances = {},
                std::uint64_t seed = 0);

// Rigid-body summary of the rider's torso (feet midpoint).
struct TorsoKinematics {
  Pose2 pose;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  double speed = 0.0;  // along the heading
  double yaw_rate = 0.0;
};

TorsoKinematics Torso(const World& w);

// Advances the world by one control tick: pending disturbances, rider
// channels to platform torques, RK4 platform steps, rider COM step driven
// by the feet-midpoint acceleration, toe followers. Faults carry a dump of
// the full world state.
World WorldStep(const World& w, const ControlCommand& cmd, double dt);

std::string DumpState(const World& w);

// Deck outline of a platform in the world frame.
Polygon PlatformFootprint(const PlatformState& s, const PlatformParams& p);

struct RangeScan {
  Pose2 origin;
  std::vector<double> angles;  // relative to origin heading [rad]
  std::vector<double> ranges;  // (0, max_range]
  double max_range = 0.0;
};

// Evenly spaced beams over a full turn starting at -pi. Rays hit only
// obstacles that are not low. `range_noise_std` > 0 requires `rng`.
RangeScan SimulateScan(const World& w, const Pose2& sensor, int beam_count,
                       double max_range, double range_noise_std = 0.0,
                       std::mt19937_64* rng = nullptr);

// Same, against an explicit obstacle list.
RangeScan SimulateScan(const ObstacleList& obstacles, const Pose2& sensor,
                       int beam_count, double max_range,
                       double range_noise_std = 0.0,
                       std::mt19937_64* rng = nullptr);

struct NoiseConfig {
  double speed_std = 0.02;      // [m/s]
  double yaw_rate_std = 0.01;   // [rad/s]
  double position_std = 0.005;  // [m]
  double heading_std = 0.0;     // [rad]
  double range_std = 0.0;       // [m]
  double filter_time_constant = 0.05;  // [s]
};

struct EstimatedOdometry {
  Pose2 pose;
  double speed = 0.0;
  double yaw_rate = 0.0;
  NoiseConfig noise;
};

// Stand-in for visual-inertial odometry: ground truth plus seeded Gaussian
// noise, with speed and yaw rate low-pass filtered.
class OdometryEstimator {
 public:
  OdometryEstimator(const NoiseConfig& noise, std::uint64_t seed);

  EstimatedOdometry Update(const World& w, double dt);

 private:
  double Gaussian(double std);

  NoiseConfig noise_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  bool initialized_ = false;
  double speed_filtered_ = 0.0;
  double yaw_rate_filtered_ = 0.0;
};

// Proprioceptive measurements (feet, hips, toes, COM) from the true state,
// with speed and yaw rate supplied by the caller.
ControlMeasurements MeasureForControl(const World& w, double speed_est,
                                      double yaw_rate_est);

}  // namespace hoverride

#endif  // HOVERRIDE_WORLD_WORLD_H_
