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

#ifndef HOVERRIDE_PLANNER_DIJKSTRA_H_
#define HOVERRIDE_PLANNER_DIJKSTRA_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hoverride/planner/costmap.h"

namespace hoverride {

// Exact path cost a/64 + b*sqrt(2)/64: `straight` and `diagonal` are sums
// of (64 + destination cost) over axis-aligned and diagonal steps. Keeping
// the two sums as integers makes costs independent of summation order.
struct PathCost {
  std::int64_t straight = 0;
  std::int64_t diagonal = 0;

  double value() const;
  PathCost operator+(const PathCost& o) const {
    return {straight + o.straight, diagonal + o.diagonal};
  }
  bool operator==(const PathCost&) const = default;
};

// Strict order on value(), ties broken by the integer pair.
bool operator<(const PathCost& a, const PathCost& b);

struct GridPath {
  std::vector<Eigen::Vector2i> cells;
  PathCost cost;
};

// The eight neighbour offsets in a fixed order.
const std::array<Eigen::Vector2i, 8>& NeighborOffsets();

// Edge weight from `from` to the neighbour `from + offset`: step length in
// cells times (1 + cost(dest) / 64). Returns nullopt when the destination
// is lethal, out of bounds, or the move cuts a lethal corner.
std::optional<PathCost> EdgeCost(const Costmap& cm, const Eigen::Vector2i& from,
                                 const Eigen::Vector2i& offset);

// 8-connected minimum-cost path. Ties are broken by (cost, cell index).
// Returns nullopt when the goal is unreachable. Throws std::invalid_argument
// when start or goal is out of bounds or lethal.
std::optional<GridPath> DijkstraPlan(const Costmap& cm,
                                     const Eigen::Vector2i& start,
                                     const Eigen::Vector2i& goal);

}  // namespace hoverride

#endif  // HOVERRIDE_PLANNER_DIJKSTRA_H_
