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

#ifndef HOVERRIDE_PLANNER_COSTMAP_H_
#define HOVERRIDE_PLANNER_COSTMAP_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hoverride/planner/occupancy_grid.h"

namespace hoverride {

inline constexpr std::uint8_t kLethalCost = 255;
inline constexpr std::uint8_t kInscribedCost = 254;

struct CostmapParams {
  double inflation_radius = 1.2;  // [m]
  double decay = 3.0;             // [1/m]
  double robot_radius = 0.35;     // [m]

  // Throws std::invalid_argument.
  void Validate() const;
};

// Unknown cells are treated as free.
struct Costmap {
  GridGeometry geometry;
  CostmapParams params;
  std::vector<std::uint8_t> cost;
  // Distance from each cell centre to the nearest occupied cell centre [m];
  // +inf when the grid has no occupied cell.
  std::vector<double> distance;

  std::uint8_t at(const Eigen::Vector2i& c) const {
    return cost[geometry.Index(c)];
  }
  bool Lethal(const Eigen::Vector2i& c) const { return at(c) == kLethalCost; }
};

// Exact squared Euclidean distance transform in cell units: for each cell,
// the squared distance to the nearest cell with `seed[i] == true`. Cells get
// +inf when there is no seed. Separable lower-envelope algorithm.
std::vector<double> SquaredDistanceTransform(int width, int height,
                                             const std::vector<bool>& seed);

// Cost of a free cell at obstacle distance d:
//   round(min(254, 254 * exp(-decay * (d - robot_radius)))) within the
//   inflation radius, 0 beyond.
std::uint8_t InflatedCost(double d, const CostmapParams& params);

Costmap BuildCostmap(const OccupancyGrid& grid, const CostmapParams& params);

// Bilinear interpolation of the distance field between cell centres,
// clamped to the grid. Returns +inf on a grid without obstacles.
double InterpolateDistance(const Costmap& costmap, const Eigen::Vector2d& p);

// Lower bound on the distance from a point to the nearest occupied cell's
// square: interpolated centre distance less one cell diagonal (half for
// the interpolation error, half for the cell extent).
double Clearance(const Costmap& costmap, const Eigen::Vector2d& p);

}  // namespace hoverride

#endif  // HOVERRIDE_PLANNER_COSTMAP_H_
