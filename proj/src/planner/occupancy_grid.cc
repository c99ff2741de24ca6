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

#include "hoverride/planner/occupancy_grid.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hoverride {

void GridGeometry::Validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  if (!origin.allFinite()) {
    throw std::invalid_argument("grid origin must be finite");
  }
}

Eigen::Vector2i GridGeometry::CellOf(const Eigen::Vector2d& p) const {
  const Eigen::Vector2d q = (p - origin) / resolution;
  return {static_cast<int>(std::floor(q.x())),
          static_cast<int>(std::floor(q.y()))};
}

std::optional<Eigen::Vector2i> GridGeometry::WorldToCell(
    const Eigen::Vector2d& p) const {
  const Eigen::Vector2i c = CellOf(p);
  if (!InBounds(c)) return std::nullopt;
  return c;
}

Eigen::Vector2d GridGeometry::CellCenter(const Eigen::Vector2i& c) const {
  return origin + resolution * (c.cast<double>() + Eigen::Vector2d(0.5, 0.5));
}

OccupancyGrid::OccupancyGrid(const GridGeometry& geometry, CellState fill)
    : geometry_(geometry) {
  geometry_.Validate();
  cells_.assign(geometry_.size(), fill);
}

namespace {

[[noreturn]] void ParseError(int line, const std::string& msg) {
  throw std::runtime_error("grid line " + std::to_string(line) + ": " + msg);
}

bool NextContentLine(std::istream& in, std::string* line, int* line_no) {
  while (std::getline(in, *line)) {
    ++*line_no;
    const auto first = line->find_first_not_of(" \t\r");
    if (first == std::string::npos || (*line)[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

OccupancyGrid ReadGrid(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!NextContentLine(in, &line, &line_no)) ParseError(line_no, "missing header");
  GridGeometry g;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> g.width >> g.height >> g.resolution >> g.origin.x() >>
          g.origin.y()) ||
        (hs >> extra)) {
      ParseError(line_no,
                 "header must be 'width height resolution origin_x origin_y'");
    }
    try {
      g.Validate();
    } catch (const std::invalid_argument& e) {
      ParseError(line_no, e.what());
    }
  }
  OccupancyGrid grid(g);
  for (int j = 0; j < g.height; ++j) {
    if (!NextContentLine(in, &line, &line_no)) {
      ParseError(line_no, "expected " + std::to_string(g.height) + " rows");
    }
    std::istringstream rs(line);
    std::string token;
    int i = 0;
    while (rs >> token) {
      for (char ch : token) {
        if (ch < '0' || ch > '2') {
          ParseError(line_no, std::string("invalid cell value '") + ch + "'");
        }
        if (i >= g.width) ParseError(line_no, "too many cells in row");
        grid.set({i, j}, static_cast<CellState>(ch - '0'));
        ++i;
      }
    }
    if (i != g.width) ParseError(line_no, "too few cells in row");
  }
  if (NextContentLine(in, &line, &line_no)) {
    ParseError(line_no, "unexpected content after last row");
  }
  return grid;
}

OccupancyGrid ReadGridFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid file '" + path + "'");
  return ReadGrid(in);
}

void WriteGrid(const OccupancyGrid& grid, std::ostream& out) {
  const GridGeometry& g = grid.geometry();
  char header[160];
  std::snprintf(header, sizeof(header), "%d %d %.17g %.17g %.17g\n", g.width,
                g.height, g.resolution, g.origin.x(), g.origin.y());
  out << header;
  for (int j = 0; j < g.height; ++j) {
    std::string row(2 * g.width - 1, ' ');
    for (int i = 0; i < g.width; ++i) {
      row[2 * i] = static_cast<char>('0' + static_cast<int>(grid.at({i, j})));
    }
    out << row << '\n';
  }
}

std::vector<Eigen::Vector2i> TraceRay(const GridGeometry& g,
                                      const Eigen::Vector2d& a,
                                      const Eigen::Vector2d& b) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Eigen::Vector2d d = b - a;
  Eigen::Vector2i c = g.CellOf(a);
  const Eigen::Vector2i end = g.CellOf(b);
  int step[2];
  double t_max[2];
  double t_delta[2];
  int remaining[2];
  for (int k = 0; k < 2; ++k) {
    step[k] = end[k] > c[k] ? 1 : (end[k] < c[k] ? -1 : 0);
    remaining[k] = std::abs(end[k] - c[k]);
    if (step[k] == 0 || d[k] == 0.0) {
      t_max[k] = kInf;
      t_delta[k] = kInf;
      continue;
    }
    const double boundary =
        g.origin[k] + (c[k] + (step[k] > 0 ? 1 : 0)) * g.resolution;
    t_max[k] = (boundary - a[k]) / d[k];
    t_delta[k] = g.resolution / std::abs(d[k]);
  }
  std::vector<Eigen::Vector2i> cells;
  cells.reserve(remaining[0] + remaining[1] + 1);
  if (g.InBounds(c)) cells.push_back(c);
  // Exactly |di| + |dj| unit steps, so rounding can never overshoot `end`.
  while (remaining[0] + remaining[1] > 0) {
    int k;
    if (remaining[0] == 0) {
      k = 1;
    } else if (remaining[1] == 0) {
      k = 0;
    } else {
      k = t_max[0] <= t_max[1] ? 0 : 1;
    }
    c[k] += step[k];
    t_max[k] += t_delta[k];
    --remaining[k];
    if (g.InBounds(c)) cells.push_back(c);
  }
  return cells;
}

OccupancyGrid UpdateMap(const OccupancyGrid& grid, const RangeScan& scan,
                        const Pose2& sensor) {
  OccupancyGrid out = grid;
  const GridGeometry& g = grid.geometry();
  const Eigen::Vector2d origin = sensor.position();
  std::vector<Eigen::Vector2i> hits;
  const std::size_t n = std::min(scan.angles.size(), scan.ranges.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double r = scan.ranges[k];
    const bool hit = r < scan.max_range;
    const Eigen::Vector2d end =
        origin + r * HeadingVector(sensor.heading + scan.angles[k]);
    const std::vector<Eigen::Vector2i> cells = TraceRay(g, origin, end);
    const Eigen::Vector2i end_cell = g.CellOf(end);
    for (const Eigen::Vector2i& c : cells) {
      if (hit && c == end_cell) continue;
      if (out.at(c) != CellState::kOccupied) out.set(c, CellState::kFree);
    }
    if (hit && g.InBounds(end_cell)) hits.push_back(end_cell);
  }
  for (const Eigen::Vector2i& c : hits) out.set(c, CellState::kOccupied);
  return out;
}

void RasterizeObstacles(const ObstacleList& obstacles, bool include_low,
                        OccupancyGrid* grid) {
  const GridGeometry& g = grid->geometry();
  for (const Obstacle& o : obstacles) {
    if (o.low && !include_low) continue;
    if (o.polygon.empty()) continue;
    Eigen::Vector2d lo = o.polygon.front();
    Eigen::Vector2d hi = lo;
    for (const auto& v : o.polygon) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    const Eigen::Vector2i c0 =
        g.CellOf(lo).cwiseMax(Eigen::Vector2i::Zero());
    const Eigen::Vector2i c1 =
        g.CellOf(hi).cwiseMin(Eigen::Vector2i(g.width - 1, g.height - 1));
    for (int j = c0.y(); j <= c1.y(); ++j) {
      for (int i = c0.x(); i <= c1.x(); ++i) {
        const Polygon cell =
            MakeBox(g.CellCenter({i, j}), g.resolution, g.resolution);
        if (PolygonDistance(cell, o.polygon) == 0.0) {
          grid->set({i, j}, CellState::kOccupied);
        }
      }
    }
  }
}

}  // namespace hoverride
