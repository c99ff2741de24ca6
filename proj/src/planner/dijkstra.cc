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

#include "hoverride/planner/dijkstra.h"

#include <algorithm>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace hoverride {

double PathCost::value() const {
  return (static_cast<double>(straight) +
          std::numbers::sqrt2 * static_cast<double>(diagonal)) /
         64.0;
}

bool operator<(const PathCost& a, const PathCost& b) {
  const double va = a.value();
  const double vb = b.value();
  if (va != vb) return va < vb;
  return std::tie(a.straight, a.diagonal) < std::tie(b.straight, b.diagonal);
}

const std::array<Eigen::Vector2i, 8>& NeighborOffsets() {
  static const std::array<Eigen::Vector2i, 8> kOffsets = {
      Eigen::Vector2i(1, 0),  Eigen::Vector2i(-1, 0), Eigen::Vector2i(0, 1),
      Eigen::Vector2i(0, -1), Eigen::Vector2i(1, 1),  Eigen::Vector2i(-1, 1),
      Eigen::Vector2i(1, -1), Eigen::Vector2i(-1, -1)};
  return kOffsets;
}

std::optional<PathCost> EdgeCost(const Costmap& cm, const Eigen::Vector2i& from,
                                 const Eigen::Vector2i& offset) {
  const Eigen::Vector2i to = from + offset;
  if (!cm.geometry.InBounds(to) || cm.Lethal(to)) return std::nullopt;
  const std::int64_t w = 64 + cm.at(to);
  if (offset.x() != 0 && offset.y() != 0) {
    if (cm.Lethal({from.x() + offset.x(), from.y()}) ||
        cm.Lethal({from.x(), from.y() + offset.y()})) {
      return std::nullopt;
    }
    return PathCost{0, w};
  }
  return PathCost{w, 0};
}

std::optional<GridPath> DijkstraPlan(const Costmap& cm,
                                     const Eigen::Vector2i& start,
                                     const Eigen::Vector2i& goal) {
  const GridGeometry& g = cm.geometry;
  if (!g.InBounds(start) || !g.InBounds(goal)) {
    throw std::invalid_argument("start and goal must lie inside the grid");
  }
  if (cm.Lethal(start) || cm.Lethal(goal)) {
    throw std::invalid_argument("start and goal must not be lethal cells");
  }
  const int n = g.size();
  std::vector<std::optional<PathCost>> dist(n);
  std::vector<int> parent(n, -1);
  std::vector<bool> done(n, false);
  using Entry = std::pair<PathCost, int>;
  auto later = [](const Entry& a, const Entry& b) {
    if (a.first < b.first) return false;
    if (b.first < a.first) return true;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> open(later);
  const int s = g.Index(start);
  const int t = g.Index(goal);
  dist[s] = PathCost{};
  open.push({PathCost{}, s});
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == t) break;
    const Eigen::Vector2i cu = g.Cell(u);
    for (const Eigen::Vector2i& off : NeighborOffsets()) {
      const std::optional<PathCost> w = EdgeCost(cm, cu, off);
      if (!w) continue;
      const int v = g.Index(cu + off);
      if (done[v]) continue;
      const PathCost nd = d + *w;
      if (!dist[v] || nd < *dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        open.push({nd, v});
      }
    }
  }
  if (!done[t]) return std::nullopt;
  GridPath path;
  path.cost = *dist[t];
  for (int v = t; v != -1; v = parent[v]) path.cells.push_back(g.Cell(v));
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

}  // namespace hoverride
