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
#include <numbers>
#include <stdexcept>

namespace hoverride {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D lower envelope of parabolas (f[q] + (p - q)^2), in place.
void Transform1d(std::vector<double>& f, std::vector<double>& scratch_d,
                 std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = 0.0;
    while (k >= 0) {
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * (q - v[k]));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf : s;
    z[k + 1] = kInf;
  }
  if (k < 0) return;  // all infinite
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double diff = q - v[j];
    scratch_d[q] = diff * diff + f[v[j]];
  }
  f.swap(scratch_d);
}

}  // namespace

void CostmapParams::Validate() const {
  if (!(inflation_radius >= 0.0) || !(decay >= 0.0) || !(robot_radius >= 0.0) ||
      !std::isfinite(inflation_radius) || !std::isfinite(decay) ||
      !std::isfinite(robot_radius)) {
    throw std::invalid_argument("costmap parameters must be finite and >= 0");
  }
}

std::vector<double> SquaredDistanceTransform(int width, int height,
                                             const std::vector<bool>& seed) {
  const int n = std::max(width, height);
  std::vector<double> out(static_cast<std::size_t>(width) * height, kInf);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (seed[i]) out[i] = 0.0;
  }
  std::vector<double> f, d(n);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  // Columns (along j), then rows (along i).
  for (int i = 0; i < width; ++i) {
    f.assign(height, 0.0);
    d.assign(height, 0.0);
    for (int j = 0; j < height; ++j) f[j] = out[j * width + i];
    Transform1d(f, d, v, z);
    for (int j = 0; j < height; ++j) out[j * width + i] = f[j];
  }
  for (int j = 0; j < height; ++j) {
    f.assign(out.begin() + j * width, out.begin() + (j + 1) * width);
    d.assign(width, 0.0);
    Transform1d(f, d, v, z);
    std::copy(f.begin(), f.end(), out.begin() + j * width);
  }
  return out;
}

std::uint8_t InflatedCost(double d, const CostmapParams& params) {
  if (d > params.inflation_radius) return 0;
  const double c =
      std::min(254.0, 254.0 * std::exp(-params.decay * (d - params.robot_radius)));
  return static_cast<std::uint8_t>(std::lround(c));
}

Costmap BuildCostmap(const OccupancyGrid& grid, const CostmapParams& params) {
  params.Validate();
  Costmap cm;
  cm.geometry = grid.geometry();
  cm.params = params;
  const int n = cm.geometry.size();
  std::vector<bool> seed(n);
  for (int k = 0; k < n; ++k) seed[k] = grid.at(k) == CellState::kOccupied;
  const std::vector<double> d2 =
      SquaredDistanceTransform(cm.geometry.width, cm.geometry.height, seed);
  cm.distance.resize(n);
  cm.cost.resize(n);
  for (int k = 0; k < n; ++k) {
    cm.distance[k] = std::sqrt(d2[k]) * cm.geometry.resolution;
    cm.cost[k] = seed[k] ? kLethalCost : InflatedCost(cm.distance[k], params);
  }
  return cm;
}

double InterpolateDistance(const Costmap& costmap, const Eigen::Vector2d& p) {
  const GridGeometry& g = costmap.geometry;
  // Continuous index with cell centres at integers.
  const Eigen::Vector2d q = (p - g.origin) / g.resolution -
                            Eigen::Vector2d(0.5, 0.5);
  const double qx = std::clamp(q.x(), 0.0, g.width - 1.0);
  const double qy = std::clamp(q.y(), 0.0, g.height - 1.0);
  const int i0 = std::min(static_cast<int>(qx), std::max(g.width - 2, 0));
  const int j0 = std::min(static_cast<int>(qy), std::max(g.height - 2, 0));
  const int i1 = std::min(i0 + 1, g.width - 1);
  const int j1 = std::min(j0 + 1, g.height - 1);
  const double fx = qx - i0;
  const double fy = qy - j0;
  auto at = [&](int i, int j) { return costmap.distance[j * g.width + i]; };
  const double d00 = at(i0, j0), d10 = at(i1, j0), d01 = at(i0, j1),
               d11 = at(i1, j1);
  if (d00 == kInf || d10 == kInf || d01 == kInf || d11 == kInf) {
    return std::min({d00, d10, d01, d11});
  }
  return (1 - fy) * ((1 - fx) * d00 + fx * d10) +
         fy * ((1 - fx) * d01 + fx * d11);
}

double Clearance(const Costmap& costmap, const Eigen::Vector2d& p) {
  return InterpolateDistance(costmap, p) -
         std::numbers::sqrt2 * costmap.geometry.resolution;
}

}  // namespace hoverride
