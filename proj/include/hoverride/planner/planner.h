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

// One global + local planning cycle on a map snapshot, and the conversion
// of its result into speed / yaw-rate set-points for the controller.

#ifndef HOVERRIDE_PLANNER_PLANNER_H_
#define HOVERRIDE_PLANNER_PLANNER_H_

#include <cstdint>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoverride/common/geometry.h"
#include "hoverride/control/control.h"
#include "hoverride/planner/costmap.h"
#include "hoverride/planner/dijkstra.h"
#include "hoverride/planner/occupancy_grid.h"
#include "hoverride/planner/teb.h"

namespace hoverride {

struct PlannerConfig {
  CostmapParams costmap;
  PlannerLimits limits;
  TebParams teb;
  double period = 0.1;        // [s]
  int stale_periods = 3;      // plans older than this many periods are void
  double goal_tolerance = 0.2;  // final goal reached [m]

  // Throws std::invalid_argument.
  void Validate() const;
};

enum class PlanStatus { kOk, kGoalReached, kUnreachable, kNoFeasibleTrajectory };

const char* PlanStatusName(PlanStatus s);

struct PlanResult {
  PlanStatus status = PlanStatus::kOk;
  std::int64_t tick = 0;  // control tick of the snapshot
  std::vector<Eigen::Vector2d> global_path;  // world frame
  std::vector<Eigen::Vector2d> local_path;   // truncated at lookahead
  TebResult teb;
};

// Polyline prefix of arc length `length` (interpolated end point).
std::vector<Eigen::Vector2d> TruncatePath(
    const std::vector<Eigen::Vector2d>& path, double length);

// Dijkstra on the costmap of `map`, truncated at the lookahead, then TEB
// from `pose` with initial speed `start_speed`. Unknown cells count as free.
PlanResult PlanCycle(const OccupancyGrid& map, const Pose2& pose,
                     double start_speed, const Pose2& goal,
                     const PlannerConfig& config, std::int64_t tick = 0);

struct PlannerSetpoints {
  double speed = 0.0;
  double yaw_rate = 0.0;
};

// Speed and yaw rate of the trajectory segment closest to `current`,
// clamped to the command limits. Returns zeros for an empty trajectory or
// when `plan_age` exceeds `max_age`.
PlannerSetpoints PlanToSetpoints(const TimedTrajectory& trajectory,
                                 const Pose2& current, double plan_age,
                                 double max_age,
                                 const CommandLimits& limits = {});

// Single-writer, latest-value handoff between the planner and the control
// loop. Readers never block on the writer beyond a short copy.
template <typename T>
class LatestValueMailbox {
 public:
  void Publish(T value) {
    std::lock_guard<std::mutex> lock(mu_);
    value_ = std::move(value);
    ++version_;
  }

  std::optional<T> Latest() const {
    std::lock_guard<std::mutex> lock(mu_);
    return value_;
  }

  std::uint64_t version() const {
    std::lock_guard<std::mutex> lock(mu_);
    return version_;
  }

 private:
  mutable std::mutex mu_;
  std::optional<T> value_;
  std::uint64_t version_ = 0;
};

}  // namespace hoverride

#endif  // HOVERRIDE_PLANNER_PLANNER_H_
