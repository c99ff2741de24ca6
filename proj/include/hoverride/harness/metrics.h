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

#ifndef HOVERRIDE_HARNESS_METRICS_H_
#define HOVERRIDE_HARNESS_METRICS_H_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoverride/harness/scenario.h"

namespace hoverride {

// Per-tick record: state before the step, commands in force during it.
struct TickSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double speed = 0.0;     // true torso speed
  double yaw_rate = 0.0;  // true torso yaw rate
  double speed_des = 0.0;
  double yaw_rate_des = 0.0;
  double y_offset = 0.0;
  bool velocity_window = false;
  bool yaw_window = false;

  double speed_est = 0.0;
  double yaw_rate_est = 0.0;
  double x_gap = 0.0;  // left foot x - right foot x, torso frame
  double foot_y[2] = {0.0, 0.0};
  double com[2] = {0.0, 0.0};
  double com_des[2] = {0.0, 0.0};
  double toe_torque[2] = {0.0, 0.0};
  double hip_yaw_torque[2] = {0.0, 0.0};
  double toe_pitch[2] = {0.0, 0.0};
  double platform_pitch[2] = {0.0, 0.0};
  double clearance = 0.0;  // torso to nearest tall obstacle (inf if none)
  bool collision = false;  // a platform deck overlaps an obstacle
};

struct MetricsReport {
  std::string scenario;
  std::string mode;
  double simulated_time = 0.0;
  long long ticks = 0;

  double velocity_rmse = 0.0;
  long long velocity_rmse_samples = 0;
  double yaw_rate_rmse = 0.0;
  long long yaw_rate_rmse_samples = 0;
  std::vector<double> velocity_step_reach;  // per step; < 0: not reached
  bool velocity_steps_reached = true;
  double velocity_step_reach_max = 0.0;

  double x_gap_max = 0.0;
  double x_gap_final = 0.0;
  double x_gap_settle_time = 0.0;  // < 0: never settled

  double min_clearance = 0.0;  // inf without tall obstacles
  long long collisions = 0;    // collision onsets

  bool goal_reached = false;
  double goal_time = -1.0;
  double goal_distance_final = 0.0;
  long long planner_cycles = 0;
  long long planner_failures = 0;

  double curvature = 0.0;
  double curvature_expected = 0.0;
  double curvature_error = 0.0;  // relative

  double wave_amplitude = 0.0;
  double wave_amplitude_expected = 0.0;
  double wave_amplitude_error = 0.0;  // relative

  bool fault = false;
  std::string fault_kind;
  std::string fault_message;
  double fault_time = 0.0;

  // Ordered key/value pairs; numbers printed with %.17g.
  std::vector<std::pair<std::string, std::string>> Fields() const;
  std::string ToText() const;
  std::string ToJson() const;
};

// Root-mean-square of (a - b) over the flagged samples; zero when none.
double WindowedRmse(const std::vector<TickSample>& samples, bool velocity);

struct CircleFit {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
};

// Algebraic least-squares circle through the points (x^2 + y^2 + D x + E y
// + F = 0). Throws std::invalid_argument for fewer than 3 points.
CircleFit FitCircle(const std::vector<Eigen::Vector2d>& points);

struct SineFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;  // y = offset + amplitude * sin(w t + phase)
};

// Least-squares fit at known angular frequency w.
SineFit FitSine(const std::vector<double>& t, const std::vector<double>& y,
                double w);

// Fills every sample-derived metric. Goal, planner and fault fields are
// left for the caller.
MetricsReport ComputeMetrics(const Scenario& s,
                             const std::vector<TickSample>& samples);

}  // namespace hoverride

#endif  // HOVERRIDE_HARNESS_METRICS_H_
