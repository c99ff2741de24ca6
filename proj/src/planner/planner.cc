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

#include "hoverride/planner/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hoverride {

void PlannerConfig::Validate() const {
  costmap.Validate();
  limits.Validate();
  if (!(period > 0.0) || stale_periods < 1 || !(goal_tolerance > 0.0)) {
    throw std::invalid_argument("invalid planner timing or goal tolerance");
  }
  if (!(teb.segment_spacing > 0.0) || teb.max_poses < 2 ||
      teb.max_iterations < 1 || !(teb.min_dt > 0.0)) {
    throw std::invalid_argument("invalid band parameters");
  }
}

const char* PlanStatusName(PlanStatus s) {
  switch (s) {
    case PlanStatus::kOk:
      return "ok";
    case PlanStatus::kGoalReached:
      return "goal_reached";
    case PlanStatus::kUnreachable:
      return "unreachable";
    case PlanStatus::kNoFeasibleTrajectory:
      return "no_feasible_trajectory";
  }
  return "unknown";
}

std::vector<Eigen::Vector2d> TruncatePath(
    const std::vector<Eigen::Vector2d>& path, double length) {
  std::vector<Eigen::Vector2d> out;
  if (path.empty()) return out;
  out.push_back(path.front());
  double used = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double seg = (path[i] - path[i - 1]).norm();
    if (used + seg >= length) {
      const double f = seg > 0.0 ? (length - used) / seg : 0.0;
      out.push_back(path[i - 1] + f * (path[i] - path[i - 1]));
      return out;
    }
    used += seg;
    out.push_back(path[i]);
  }
  return out;
}

PlanResult PlanCycle(const OccupancyGrid& map, const Pose2& pose,
                     double start_speed, const Pose2& goal,
                     const PlannerConfig& config, std::int64_t tick) {
  PlanResult result;
  result.tick = tick;
  if ((goal.position() - pose.position()).norm() <= config.goal_tolerance) {
    result.status = PlanStatus::kGoalReached;
    return result;
  }
  const Costmap costmap = BuildCostmap(map, config.costmap);
  const GridGeometry& g = costmap.geometry;
  const auto start_cell = g.WorldToCell(pose.position());
  const auto goal_cell = g.WorldToCell(goal.position());
  if (!start_cell || !goal_cell || costmap.Lethal(*start_cell) ||
      costmap.Lethal(*goal_cell)) {
    result.status = PlanStatus::kUnreachable;
    return result;
  }
  const std::optional<GridPath> path =
      DijkstraPlan(costmap, *start_cell, *goal_cell);
  if (!path) {
    result.status = PlanStatus::kUnreachable;
    return result;
  }
  result.global_path.reserve(path->cells.size());
  for (const auto& c : path->cells) {
    result.global_path.push_back(g.CellCenter(c));
  }
  // Exact endpoints instead of cell centres.
  result.global_path.front() = pose.position();
  if (result.global_path.size() == 1) {
    result.global_path.push_back(goal.position());
  } else {
    result.global_path.back() = goal.position();
  }
  result.local_path = TruncatePath(result.global_path, config.limits.lookahead);

  TebProblem problem;
  problem.seed_path = result.local_path;
  problem.start = pose;
  problem.start_speed = start_speed;
  problem.costmap = &costmap;
  const Eigen::Vector2d end = result.local_path.back();
  const Eigen::Vector2d before = result.local_path[result.local_path.size() - 2];
  const Eigen::Vector2d dir = end - before;
  // The band ends facing along the path; the goal heading only matters
  // when the path degenerates to a point.
  problem.goal = {end.x(), end.y(),
                  dir.norm() < 1e-9 ? goal.heading
                                    : std::atan2(dir.y(), dir.x())};
  result.teb = TebOptimize(problem, config.limits, config.teb);
  result.status = result.teb.status == TebStatus::kOk
                      ? PlanStatus::kOk
                      : PlanStatus::kNoFeasibleTrajectory;
  return result;
}

PlannerSetpoints PlanToSetpoints(const TimedTrajectory& trajectory,
                                 const Pose2& current, double plan_age,
                                 double max_age, const CommandLimits& limits) {
  PlannerSetpoints out;
  if (trajectory.dts.empty() || plan_age > max_age) return out;
  const Eigen::Vector2d p = current.position();
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trajectory.dts.size(); ++i) {
    const double d = DistanceToSegment(p, trajectory.poses[i].position(),
                                       trajectory.poses[i + 1].position());
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const std::vector<double> v = SegmentVelocities(trajectory);
  const std::vector<double> w = SegmentYawRates(trajectory);
  out.speed = std::clamp(v[best], -limits.max_speed, limits.max_speed);
  out.yaw_rate = std::clamp(w[best], -limits.max_yaw_rate, limits.max_yaw_rate);
  return out;
}

}  // namespace hoverride
