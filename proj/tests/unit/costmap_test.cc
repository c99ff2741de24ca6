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

#include "hoverride/planner/costmap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

namespace hoverride {
namespace {

GridGeometry Geometry(int w, int h, double res = 0.05) {
  GridGeometry g;
  g.width = w;
  g.height = h;
  g.resolution = res;
  return g;
}

TEST(Costmap, EmptyGridIsFree) {
  const Costmap cm = BuildCostmap(OccupancyGrid(Geometry(30, 20)), {});
  for (auto c : cm.cost) EXPECT_EQ(c, 0);
  for (double d : cm.distance) EXPECT_TRUE(std::isinf(d));
}

TEST(DistanceTransform, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 30);
    const int h = 5 + static_cast<int>(rng() % 30);
    std::vector<bool> seed(w * h);
    for (int k = 0; k < w * h; ++k) seed[k] = rng() % 17 == 0;
    const auto d2 = SquaredDistanceTransform(w, h, seed);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int q = 0; q < w * h; ++q) {
          if (!seed[q]) continue;
          const double dx = q % w - i;
          const double dy = q / w - j;
          best = std::min(best, dx * dx + dy * dy);
        }
        EXPECT_EQ(d2[j * w + i], best) << i << "," << j;
      }
    }
  }
}

TEST(Costmap, SingleCellFormula) {
  OccupancyGrid grid(Geometry(41, 41), CellState::kFree);
  grid.set({20, 20}, CellState::kOccupied);
  CostmapParams p;
  p.decay = 10.0;
  p.robot_radius = 0.05;
  const Costmap cm = BuildCostmap(grid, p);
  EXPECT_EQ(cm.at({20, 20}), kLethalCost);
  EXPECT_NEAR(cm.distance[cm.geometry.Index({22, 20})], 0.1, 1e-12);
  const double expected = 254.0 * std::exp(-10.0 * (0.1 - 0.05));
  EXPECT_EQ(cm.at({22, 20}), std::lround(expected));
  EXPECT_EQ(cm.at({22, 20}), 154);
  // Inside the robot radius the cost saturates at the inscribed value.
  EXPECT_EQ(cm.at({21, 20}), kInscribedCost);
  p.robot_radius = 0.35;
  EXPECT_EQ(BuildCostmap(grid, p).at({22, 20}), kInscribedCost);
}

TEST(Costmap, ZeroBeyondInflation) {
  OccupancyGrid grid(Geometry(60, 5), CellState::kFree);
  grid.set({0, 2}, CellState::kOccupied);
  CostmapParams p;
  p.inflation_radius = 1.01;
  const Costmap cm = BuildCostmap(grid, p);
  EXPECT_GT(cm.at({20, 2}), 0);
  EXPECT_EQ(cm.at({21, 2}), 0);
}

TEST(Costmap, NonIncreasingWithDistance) {
  OccupancyGrid grid(Geometry(60, 60), CellState::kFree);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    grid.set({static_cast<int>(rng() % 60), static_cast<int>(rng() % 60)},
             CellState::kOccupied);
  }
  const Costmap cm = BuildCostmap(grid, {});
  std::vector<int> order(cm.cost.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return cm.distance[a] < cm.distance[b]; });
  for (size_t k = 1; k < order.size(); ++k) {
    EXPECT_GE(cm.cost[order[k - 1]], cm.cost[order[k]]);
  }
  for (double d = 0.0; d < 2.0; d += 0.001) {
    EXPECT_GE(InflatedCost(d, {}), InflatedCost(d + 0.001, {}));
  }
}

TEST(Costmap, TwoWallsCenterlineIsCheapest) {
  const int w = 30;
  const int h = 41;
  OccupancyGrid grid(Geometry(w, h), CellState::kFree);
  for (int i = 0; i < w; ++i) {
    grid.set({i, 0}, CellState::kOccupied);
    grid.set({i, h - 1}, CellState::kOccupied);
  }
  const Costmap cm = BuildCostmap(grid, {});
  for (int i = 0; i < w; ++i) {
    int best = -1;
    for (int j = 0; j < h; ++j) {
      if (best < 0 || cm.at({i, j}) < cm.at({i, best})) best = j;
    }
    EXPECT_EQ(best, h / 2);
    EXPECT_LT(cm.at({i, h / 2}), cm.at({i, h / 2 - 1}));
    EXPECT_LT(cm.at({i, h / 2}), cm.at({i, h / 2 + 1}));
  }
}

TEST(Clearance, BoundedByCenterDistance) {
  OccupancyGrid grid(Geometry(50, 50), CellState::kFree);
  std::vector<Eigen::Vector2i> occupied;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 15; ++k) {
    const Eigen::Vector2i c(rng() % 50, rng() % 50);
    grid.set(c, CellState::kOccupied);
    occupied.push_back(c);
  }
  const Costmap cm = BuildCostmap(grid, {});
  std::uniform_real_distribution<double> u(0.05, 2.45);
  const double res = cm.geometry.resolution;
  for (int k = 0; k < 2000; ++k) {
    const Eigen::Vector2d p(u(rng), u(rng));
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& c : occupied) {
      nearest = std::min(nearest, (cm.geometry.CellCenter(c) - p).norm());
    }
    const double clearance = Clearance(cm, p);
    EXPECT_LE(clearance, nearest + 1e-12);
    EXPECT_GE(clearance, nearest - 3.0 * std::sqrt(2.0) * res);
  }
}

TEST(CostmapParams, Validation) {
  CostmapParams p;
  p.decay = -1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace hoverride
