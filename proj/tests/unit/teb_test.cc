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

#include "hoverride/planner/teb.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hoverride/planner/dijkstra.h"

namespace hoverride {
namespace {

struct Checked {
  double max_residual = 0.0;
  double max_speed = 0.0;
  double max_accel = 0.0;
  double max_yaw_rate = 0.0;
  double min_clearance = 1e9;
};

// Independent post-hoc evaluation of a returned band.
Checked Evaluate(const TimedTrajectory& t, double start_speed,
                 const Costmap* cm) {
  Checked c;
  double prev_v = start_speed;
  for (size_t i = 0; i + 1 < t.poses.size(); ++i) {
    const Pose2& a = t.poses[i];
    const Pose2& b = t.poses[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    // Chord must bisect the two headings.
    const double hx = std::cos(a.heading) + std::cos(b.heading);
    const double hy = std::sin(a.heading) + std::sin(b.heading);
    c.max_residual = std::max(c.max_residual, std::abs(hx * dy - hy * dx));
    const double v = std::hypot(dx, dy) / t.dts[i] * (hx * dx + hy * dy < 0 ? -1 : 1);
    c.max_speed = std::max(c.max_speed, std::abs(v));
    const double span = i == 0 ? t.dts[0] : 0.5 * (t.dts[i] + t.dts[i - 1]);
    c.max_accel = std::max(c.max_accel, std::abs(v - prev_v) / span);
    prev_v = v;
    c.max_yaw_rate = std::max(
        c.max_yaw_rate, std::abs(WrapAngle(b.heading - a.heading)) / t.dts[i]);
    if (cm != nullptr) {
      for (int k = 0; k <= 20; ++k) {
        const Eigen::Vector2d q =
            a.position() + (k / 20.0) * (b.position() - a.position());
        c.min_clearance = std::min(c.min_clearance, Clearance(*cm, q));
      }
    }
  }
  return c;
}

TEST(Teb, StartEqualsGoal) {
  TebProblem p;
  p.start = {1.0, 2.0, 0.3};
  p.goal = p.start;
  p.seed_path = {p.start.position()};
  const TebResult r = TebOptimize(p, PlannerLimits{});
  EXPECT_EQ(r.status, TebStatus::kOk);
  EXPECT_EQ(r.trajectory.poses.size(), 1u);
  EXPECT_EQ(r.trajectory.TotalTime(), 0.0);
  EXPECT_EQ(r.trajectory.Length(), 0.0);
  EXPECT_EQ(r.final_cost, 0.0);
}

TEST(Teb, EmptyCorridorNearTimeOptimal) {
  PlannerLimits limits;
  limits.v_max = 1.0;
  limits.a_max = 100.0;
  limits.yaw_rate_max = 1.5;
  TebProblem p;
  p.start = {0.0, 0.0, 0.0};
  p.goal = {1.75, 0.0, 0.0};
  p.seed_path = {{0.0, 0.0}, {1.75, 0.0}};
  p.start_speed = limits.v_max;
  const TebResult r = TebOptimize(p, limits);
  ASSERT_EQ(r.status, TebStatus::kOk) << r.check.reason;
  EXPECT_NEAR(r.trajectory.TotalTime(), 1.75, 0.05 * 1.75);
  EXPECT_LE(r.final_cost, r.seed_cost);
}

TEST(Teb, StraightBandHasNoResidual) {
  TebProblem p;
  p.goal = {1.2, 0.0, 0.0};
  p.seed_path = {{0.0, 0.0}, {1.2, 0.0}};
  const TebResult r = TebOptimize(p, PlannerLimits{});
  ASSERT_EQ(r.status, TebStatus::kOk);
  const Checked c = Evaluate(r.trajectory, 0.0, nullptr);
  EXPECT_LT(c.max_residual, 1e-6);
  EXPECT_EQ(r.trajectory.dts.size() + 1, r.trajectory.poses.size());
  for (double dt : r.trajectory.dts) EXPECT_GT(dt, 0.0);
}

GridGeometry Geometry(int w, int h, double res, Eigen::Vector2d origin) {
  GridGeometry g;
  g.width = w;
  g.height = h;
  g.resolution = res;
  g.origin = origin;
  return g;
}

std::vector<Eigen::Vector2d> SeedFromDijkstra(const Costmap& cm,
                                              const Pose2& a, const Pose2& b) {
  const auto path = DijkstraPlan(cm, cm.geometry.CellOf(a.position()),
                                 cm.geometry.CellOf(b.position()));
  std::vector<Eigen::Vector2d> out;
  if (!path) return out;
  for (const auto& c : path->cells) out.push_back(cm.geometry.CellCenter(c));
  out.front() = a.position();
  out.back() = b.position();
  return out;
}

TEST(Teb, ObstacleAtCorridorCenterKeepsMargin) {
  OccupancyGrid grid(Geometry(60, 60, 0.05, {-0.5, -1.5}), CellState::kFree);
  RasterizeObstacles({{MakeBox({1.0, 0.0}, 0.2, 0.2), false}}, true, &grid);
  const Costmap cm = BuildCostmap(grid, {});
  PlannerLimits limits;
  TebProblem p;
  p.start = {0.0, 0.0, 0.0};
  p.goal = {1.75, 0.0, 0.0};
  p.costmap = &cm;
  p.seed_path = SeedFromDijkstra(cm, p.start, p.goal);
  ASSERT_FALSE(p.seed_path.empty());
  const TebResult r = TebOptimize(p, limits);
  ASSERT_EQ(r.status, TebStatus::kOk) << r.check.reason;
  const Checked c = Evaluate(r.trajectory, 0.0, &cm);
  EXPECT_GE(c.min_clearance, limits.clearance_margin);
  EXPECT_LE(r.final_cost, r.seed_cost);
}

TEST(TebProperty, ContractsOnRandomProblems) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int accepted = 0;
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    OccupancyGrid grid(Geometry(80, 80, 0.05, {-1.0, -2.0}), CellState::kFree);
    ObstacleList obs;
    for (int k = 0; k < 3; ++k) {
      obs.push_back({MakeBox({0.6 + 1.6 * u(rng), -1.2 + 2.4 * u(rng)},
                             0.1 + 0.3 * u(rng), 0.1 + 0.3 * u(rng)),
                     false});
    }
    RasterizeObstacles(obs, true, &grid);
    const Costmap cm = BuildCostmap(grid, {});
    PlannerLimits limits;
    TebProblem p;
    p.start = {0.0, 0.0, -0.5 + u(rng)};
    p.goal = {1.2 + 0.5 * u(rng), -0.6 + 1.2 * u(rng), 0.0};
    p.start_speed = 0.4 * u(rng);
    p.costmap = &cm;
    if (cm.Lethal(cm.geometry.CellOf(p.goal.position())) ||
        Clearance(cm, p.start.position()) < limits.clearance_margin) {
      continue;
    }
    p.seed_path = SeedFromDijkstra(cm, p.start, p.goal);
    if (p.seed_path.size() < 2) continue;
    // Only problems whose seed already clears the margin are known to be
    // feasible; the rest still exercise the cost contract above.
    bool seed_clear = true;
    for (const auto& q : p.seed_path) {
      seed_clear = seed_clear && Clearance(cm, q) >= limits.clearance_margin + 0.05;
    }
    p.goal.heading = std::atan2(p.goal.y - p.seed_path[p.seed_path.size() - 2].y(),
                                p.goal.x - p.seed_path[p.seed_path.size() - 2].x());
    const TebResult r = TebOptimize(p, limits);
    EXPECT_LE(r.final_cost, r.seed_cost) << "trial " << trial;
    if (seed_clear) ++feasible;
    if (r.status != TebStatus::kOk) {
      EXPECT_TRUE(r.fallback);
      EXPECT_FALSE(seed_clear) << "trial " << trial << ": " << r.check.reason;
      continue;
    }
    ++accepted;
    const Checked c = Evaluate(r.trajectory, p.start_speed, &cm);
    EXPECT_LT(c.max_residual, 1e-6);
    EXPECT_LE(c.max_speed, limits.v_max + 1e-12);
    EXPECT_LE(c.max_accel, limits.a_max + 1e-9);
    EXPECT_LE(c.max_yaw_rate, limits.yaw_rate_max + 1e-9);
    EXPECT_GE(c.min_clearance, limits.clearance_margin);
  }
  EXPECT_GT(feasible, 10);
  EXPECT_GE(accepted, feasible);
}

TEST(Teb, ImpossibleLimitsReportNoFeasibleTrajectory) {
  PlannerLimits limits;
  limits.a_max = 0.01;
  TebProblem p;
  p.goal = {1.0, 0.0, 0.0};
  p.start_speed = 0.6;
  p.seed_path = {{0.0, 0.0}, {1.0, 0.0}};
  TebParams params;
  params.max_iterations = 10;
  const TebResult r = TebOptimize(p, limits, params);
  EXPECT_EQ(r.status, TebStatus::kNoFeasibleTrajectory);
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.attempts, params.retries + 1);
  EXPECT_FALSE(r.check.reason.empty());
}

TEST(SegmentKinematics, FiniteDifferences) {
  TimedTrajectory t;
  t.poses = {{0, 0, 0}, {0.1, 0, 0}, {0.3, 0, 0}};
  t.dts = {0.1, 0.1};
  const auto v = SegmentVelocities(t);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], 2.0);
  const auto a = SegmentAccelerations(t, 0.0);
  EXPECT_DOUBLE_EQ(a[0], 10.0);
  EXPECT_DOUBLE_EQ(a[1], 10.0);
  EXPECT_DOUBLE_EQ(NonholonomicResidual(t.poses[0], t.poses[1]), 0.0);
  EXPECT_GT(NonholonomicResidual({0, 0, 0}, {0, 0.1, 0}), 0.0);
}

}  // namespace
}  // namespace hoverride
