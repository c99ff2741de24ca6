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

#include "hoverride/common/geometry.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hoverride {

Polygon MakeBox(const Eigen::Vector2d& center, double length_x, double length_y,
                double yaw) {
  const double hx = 0.5 * length_x;
  const double hy = 0.5 * length_y;
  Polygon box = {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
  for (auto& v : box) v = center + FromFrame(v, yaw);
  return box;
}

Polygon NormalizeConvexPolygon(Polygon polygon) {
  if (polygon.size() < 3) {
    throw std::invalid_argument("polygon needs at least 3 vertices");
  }
  double twice_area = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    twice_area += Cross2(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  if (std::abs(twice_area) < 1e-12) {
    throw std::invalid_argument("degenerate polygon");
  }
  if (twice_area < 0.0) std::reverse(polygon.begin(), polygon.end());
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d e0 = polygon[(i + 1) % n] - polygon[i];
    const Eigen::Vector2d e1 = polygon[(i + 2) % n] - polygon[(i + 1) % n];
    if (Cross2(e0, e1) < -1e-12) {
      throw std::invalid_argument("polygon is not convex");
    }
  }
  return polygon;
}

bool Contains(const Polygon& polygon, const Eigen::Vector2d& point) {
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[(i + 1) % n];
    if (Cross2(b - a, point - a) < 0.0) return false;
  }
  return true;
}

double DistanceToSegment(const Eigen::Vector2d& point, const Eigen::Vector2d& a,
                         const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (point - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - point).norm();
}

double DistanceToPolygon(const Polygon& polygon, const Eigen::Vector2d& point) {
  if (Contains(polygon, point)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < polygon.size(); ++i) {
    best = std::min(best, DistanceToSegment(point, polygon[i],
                                            polygon[(i + 1) % polygon.size()]));
  }
  return best;
}

namespace {

bool SegmentsIntersect(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                       const Eigen::Vector2d& q0, const Eigen::Vector2d& q1) {
  const double d1 = Cross2(q1 - q0, p0 - q0);
  const double d2 = Cross2(q1 - q0, p1 - q0);
  const double d3 = Cross2(p1 - p0, q0 - p0);
  const double d4 = Cross2(p1 - p0, q1 - p0);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

double PolygonDistance(const Polygon& a, const Polygon& b) {
  for (const auto& v : a) {
    if (Contains(b, v)) return 0.0;
  }
  for (const auto& v : b) {
    if (Contains(a, v)) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.size(); ++i) {
    const auto& a0 = a[i];
    const auto& a1 = a[(i + 1) % a.size()];
    for (size_t j = 0; j < b.size(); ++j) {
      const auto& b0 = b[j];
      const auto& b1 = b[(j + 1) % b.size()];
      if (SegmentsIntersect(a0, a1, b0, b1)) return 0.0;
      best = std::min({best, DistanceToSegment(a0, b0, b1),
                       DistanceToSegment(b0, a0, a1)});
    }
  }
  return best;
}

std::optional<double> RaySegmentIntersection(const Eigen::Vector2d& origin,
                                             const Eigen::Vector2d& direction,
                                             const Eigen::Vector2d& a,
                                             const Eigen::Vector2d& b) {
  const Eigen::Vector2d edge = b - a;
  const double denom = Cross2(direction, edge);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const Eigen::Vector2d ao = a - origin;
  const double t = Cross2(ao, edge) / denom;
  const double u = Cross2(ao, direction) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<double> RayPolygonIntersection(const Eigen::Vector2d& origin,
                                             const Eigen::Vector2d& direction,
                                             const Polygon& polygon) {
  std::optional<double> best;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const auto hit = RaySegmentIntersection(origin, direction, polygon[i],
                                            polygon[(i + 1) % polygon.size()]);
    if (hit && (!best || *hit < *best)) best = hit;
  }
  return best;
}

}  // namespace hoverride
