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

#ifndef HOVERRIDE_PLANNER_OCCUPANCY_GRID_H_
#define HOVERRIDE_PLANNER_OCCUPANCY_GRID_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoverride/world/world.h"

namespace hoverride {

enum class CellState : std::uint8_t { kFree = 0, kOccupied = 1, kUnknown = 2 };

// Cell (i, j) covers [origin + (i, j) * resolution, origin + (i+1, j+1) *
// resolution); i runs along x, j along y. Linear index is j * width + i.
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.05;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();

  // Throws std::invalid_argument.
  void Validate() const;

  int size() const { return width * height; }
  bool InBounds(const Eigen::Vector2i& c) const {
    return c.x() >= 0 && c.y() >= 0 && c.x() < width && c.y() < height;
  }
  int Index(const Eigen::Vector2i& c) const { return c.y() * width + c.x(); }
  Eigen::Vector2i Cell(int index) const {
    return {index % width, index / width};
  }
  // Cell containing `p`, unbounded.
  Eigen::Vector2i CellOf(const Eigen::Vector2d& p) const;
  std::optional<Eigen::Vector2i> WorldToCell(const Eigen::Vector2d& p) const;
  Eigen::Vector2d CellCenter(const Eigen::Vector2i& c) const;

  bool operator==(const GridGeometry&) const = default;
};

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(const GridGeometry& geometry,
                         CellState fill = CellState::kUnknown);

  const GridGeometry& geometry() const { return geometry_; }
  CellState at(const Eigen::Vector2i& c) const {
    return cells_[geometry_.Index(c)];
  }
  CellState at(int index) const { return cells_[index]; }
  void set(const Eigen::Vector2i& c, CellState s) {
    cells_[geometry_.Index(c)] = s;
  }
  const std::vector<CellState>& cells() const { return cells_; }

  bool operator==(const OccupancyGrid&) const = default;

 private:
  GridGeometry geometry_;
  std::vector<CellState> cells_;
};

// ASCII grid format: a header line "width height resolution origin_x
// origin_y", then `height` rows of `width` digits (0 free, 1 occupied,
// 2 unknown) separated by whitespace. The first row is j = 0.
// Throws std::runtime_error with the offending line number.
OccupancyGrid ReadGrid(std::istream& in);
OccupancyGrid ReadGridFile(const std::string& path);
void WriteGrid(const OccupancyGrid& grid, std::ostream& out);

// Cells visited by the segment a -> b in traversal order (Amanatides-Woo),
// restricted to the grid. Both end cells are included when in bounds.
std::vector<Eigen::Vector2i> TraceRay(const GridGeometry& g,
                                      const Eigen::Vector2d& a,
                                      const Eigen::Vector2d& b);

// Registers a scan: cells along every beam are carved free, then each beam
// that ended short of max range marks its end cell occupied. Occupied cells
// are never cleared, so repeating a scan leaves the grid unchanged.
OccupancyGrid UpdateMap(const OccupancyGrid& grid, const RangeScan& scan,
                        const Pose2& sensor);

// Marks every cell overlapping one of the polygons as occupied.
void RasterizeObstacles(const ObstacleList& obstacles, bool include_low,
                        OccupancyGrid* grid);

}  // namespace hoverride

#endif  // HOVERRIDE_PLANNER_OCCUPANCY_GRID_H_
