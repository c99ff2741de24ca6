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

#ifndef HOVERRIDE_HARNESS_SCENARIO_H_
#define HOVERRIDE_HARNESS_SCENARIO_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoverride/common/geometry.h"
#include "hoverride/control/control.h"
#include "hoverride/planner/planner.h"
#include "hoverride/platform/platform.h"
#include "hoverride/rider/rider.h"
#include "hoverride/world/world.h"

namespace hoverride {

enum class Mode { kManual, kAutonomous, kWave };
enum class Feedback { kEstimator, kTruth };

const char* ModeName(Mode m);

struct SetpointEvent {
  double time = 0.0;
  double speed = 0.0;
  double yaw_rate = 0.0;
};

struct OffsetEvent {
  double time = 0.0;
  double y_offset = 0.2;
};

// y_offset(t) = base + amplitude * sin(2 pi frequency (t - start)), t >= start.
struct WaveSpec {
  double base = 0.2;
  double amplitude = 0.1;
  double frequency = 0.5;
  double speed = 1.0;
  double yaw_rate = 0.0;
  double start = 0.0;
};

struct MapSpec {
  bool automatic = true;  // bounds from start, goal and obstacles
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  Eigen::Vector2d size = Eigen::Vector2d::Zero();  // [m]
  double resolution = 0.05;
  double margin = 2.0;  // automatic bounds padding [m]
};

struct MetricsSpec {
  double transient = 2.0;        // excluded after each set-point change [s]
  double fit_start = -1.0;       // circle fit window start; < 0: half duration
  double gap_threshold = 0.005;  // x-gap settle band [m]
  double reach_band = 0.05;      // relative step-reach band
};

struct Scenario {
  std::string name = "unnamed";
  std::string source;    // file the scenario came from
  std::string base_dir;  // for relative paths
  double duration = 1.0;
  std::uint64_t seed = 1;
  double dt = 1e-3;
  Mode mode = Mode::kManual;
  Feedback feedback = Feedback::kEstimator;

  PlatformParams platform;
  RiderParams rider;
  Gains gains;
  CommandLimits limits;
  NoiseConfig noise;
  PlannerConfig planner;

  InitialConditions initial;
  std::vector<SetpointEvent> schedule;
  std::vector<OffsetEvent> offsets;
  WaveSpec wave;
  Pose2 goal;
  bool has_goal = false;

  ObstacleList obstacles;
  std::vector<Disturbance> disturbances;
  MapSpec map;
  int scan_beams = 360;
  double scan_range = 4.0;
  MetricsSpec metrics;

  // Throws std::invalid_argument describing the first problem found.
  void Validate() const;
};

// Parses a scenario file. Unknown keys, bad values and inconsistent
// settings raise ConfigError with the offending line.
Scenario ParseScenario(std::istream& in, const std::string& source,
                       const std::string& base_dir);
Scenario LoadScenario(const std::string& path);

// Applies one "key = value" assignment to an already parsed scenario, e.g.
// from a sweep grid. Throws std::invalid_argument.
void ApplyOverride(Scenario* s, const std::string& key,
                   const std::vector<std::string>& values);

// Set-points in effect at time t for manual and wave modes.
Setpoints ScheduledSetpoints(const Scenario& s, double t);

// Times at which the speed / yaw-rate schedule changes, including t = 0.
std::vector<double> SpeedChangeTimes(const Scenario& s);
std::vector<double> YawRateChangeTimes(const Scenario& s);

// Grid bounds used by the autonomy stack.
GridGeometry MapGeometry(const Scenario& s);

}  // namespace hoverride

#endif  // HOVERRIDE_HARNESS_SCENARIO_H_
