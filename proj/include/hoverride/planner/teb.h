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

// Timed elastic band: a short horizon of poses with time intervals between
// them, locally optimized against soft penalties on travel time, obstacle
// clearance, kinematic limits and reaching a local goal.
//
// The band is parametrized as a "snake": the start pose is fixed, and each
// segment i advances by a signed length s_i along the mean of the headings
// at its two ends. This satisfies the differential-drive arc condition
// (headings symmetric about the chord) by construction.

#ifndef HOVERRIDE_PLANNER_TEB_H_
#define HOVERRIDE_PLANNER_TEB_H_

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoverride/common/geometry.h"
#include "hoverride/planner/costmap.h"

namespace hoverride {

struct PlannerLimits {
  double v_max = 0.6;            // [m/s]
  double v_min = 0.0;            // reverse motion is penalized below this
  double a_max = 0.5;            // [m/s^2]
  double yaw_rate_max = 0.8;     // [rad/s]
  double lookahead = 1.75;       // [m]
  double clearance_margin = 0.35;  // [m]

  // Throws std::invalid_argument.
  void Validate() const;
};

struct TebParams {
  double segment_spacing = 0.15;  // target band resolution [m]
  int max_poses = 40;
  double obstacle_buffer = 0.15;  // soft margin beyond clearance_margin [m]
  double limit_slack = 0.02;      // soft limits act at (1 - slack) * limit
  double min_dt = 0.01;           // [s]
  double goal_tolerance = 0.05;   // [m]
  double residual_tolerance = 1e-6;

  double weight_time = 1.0;
  double weight_obstacle = 1000.0;
  double weight_velocity = 1000.0;
  double weight_forward = 1000.0;
  double weight_accel = 1000.0;
  double weight_yaw_rate = 1000.0;
  double weight_goal = 1000.0;
  double weight_goal_heading = 1.0;
  double weight_segment = 100.0;

  int max_iterations = 50;
  double relative_tolerance = 1e-4;
  int retries = 2;
  double retry_dt_scale = 1.5;
};

struct TimedTrajectory {
  std::vector<Pose2> poses;
  std::vector<double> dts;        // poses.size() - 1 entries, all > 0
  std::vector<double> residuals;  // nonholonomic residual per pose pair

  double TotalTime() const;
  double Length() const;
};

// |(cos th_a + cos th_b, sin th_a + sin th_b) x (p_b - p_a)|: zero when the
// two headings are symmetric about the chord.
double NonholonomicResidual(const Pose2& a, const Pose2& b);

// Signed segment velocity (positive along the start heading), yaw rate and
// acceleration; acceleration i uses start_speed before segment 0.
std::vector<double> SegmentVelocities(const TimedTrajectory& t);
std::vector<double> SegmentYawRates(const TimedTrajectory& t);
std::vector<double> SegmentAccelerations(const TimedTrajectory& t,
                                         double start_speed);

struct TebProblem {
  std::vector<Eigen::Vector2d> seed_path;  // polyline towards the goal
  Pose2 start;
  double start_speed = 0.0;
  Pose2 goal;
  const Costmap* costmap = nullptr;  // no obstacle terms when null
};

struct TrajectoryCheck {
  bool feasible = true;
  double max_residual = 0.0;
  double max_speed = 0.0;
  double max_accel = 0.0;
  double max_yaw_rate = 0.0;
  double min_clearance = 0.0;
  double goal_error = 0.0;
  std::string reason;
};

// Hard checks on an optimized band. Clearance is sampled along every
// segment at half the grid resolution, excluding the fixed start pose.
TrajectoryCheck CheckTrajectory(const TimedTrajectory& t, const TebProblem& p,
                                const PlannerLimits& limits,
                                const TebParams& params);

enum class TebStatus { kOk, kNoFeasibleTrajectory };

struct TebResult {
  TebStatus status = TebStatus::kOk;
  TimedTrajectory trajectory;
  bool fallback = false;  // best infeasible band returned
  double seed_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
  int attempts = 0;
  TrajectoryCheck check;
};

// Optimizes a band seeded from `problem.seed_path`, retrying with a slower
// initial time grid when the hard checks fail.
TebResult TebOptimize(const TebProblem& problem, const PlannerLimits& limits,
                      const TebParams& params = {});

}  // namespace hoverride

#endif  // HOVERRIDE_PLANNER_TEB_H_
