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

#ifndef HOVERRIDE_COMMON_GEOMETRY_H_
#define HOVERRIDE_COMMON_GEOMETRY_H_

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace hoverride {

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Eigen::Vector2d position() const { return {x, y}; }
};

// Wraps to (-pi, pi].
template <typename Scalar>
Scalar WrapAngle(Scalar angle) {
  constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  Scalar wrapped = std::remainder(angle, Scalar(2) * kPi);
  if (wrapped <= -kPi) wrapped += Scalar(2) * kPi;
  return wrapped;
}

// Expresses a world-frame vector in a frame rotated by `heading`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> ToFrame(
    const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar heading) {
  using std::cos;
  using std::sin;
  const auto c = cos(heading);
  const auto s = sin(heading);
  return {c * v.x() + s * v.y(), -s * v.x() + c * v.y()};
}

// Inverse of ToFrame.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> FromFrame(
    const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar heading) {
  using std::cos;
  using std::sin;
  const auto c = cos(heading);
  const auto s = sin(heading);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> HeadingVector(Scalar heading) {
  using std::cos;
  using std::sin;
  return {cos(heading), sin(heading)};
}

inline double Cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Convex polygon, counter-clockwise vertex order.
using Polygon = std::vector<Eigen::Vector2d>;

Polygon MakeBox(const Eigen::Vector2d& center, double length_x, double length_y,
                double yaw = 0.0);

// Reorders vertices counter-clockwise. Throws on degenerate input.
Polygon NormalizeConvexPolygon(Polygon polygon);

bool Contains(const Polygon& polygon, const Eigen::Vector2d& point);

double DistanceToSegment(const Eigen::Vector2d& point, const Eigen::Vector2d& a,
                         const Eigen::Vector2d& b);

// Zero when the point is inside.
double DistanceToPolygon(const Polygon& polygon, const Eigen::Vector2d& point);

// Zero when the polygons overlap.
double PolygonDistance(const Polygon& a, const Polygon& b);

// Ray parameter t >= 0 of the first hit along origin + t * direction;
// `direction` need not be unit length.
std::optional<double> RaySegmentIntersection(const Eigen::Vector2d& origin,
                                             const Eigen::Vector2d& direction,
                                             const Eigen::Vector2d& a,
                                             const Eigen::Vector2d& b);

std::optional<double> RayPolygonIntersection(const Eigen::Vector2d& origin,
                                             const Eigen::Vector2d& direction,
                                             const Polygon& polygon);

}  // namespace hoverride

#endif  // HOVERRIDE_COMMON_GEOMETRY_H_
