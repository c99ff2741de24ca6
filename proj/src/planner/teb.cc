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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace hoverride {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Hinge(double x) { return x > 0.0 ? x : 0.0; }

// Band state: theta[0] is the fixed start heading; z packs the free
// variables as [theta_1..theta_N, s_0..s_{N-1}, dt_0..dt_{N-1}].
class Band {
 public:
  Band(const TebProblem& problem, const PlannerLimits& limits,
       const TebParams& params, int segments)
      : problem_(problem),
        limits_(limits),
        params_(params),
        n_(segments),
        soft_(1.0 - params.limit_slack) {}

  int segments() const { return n_; }
  int size() const { return 3 * n_; }
  int ResidualCount() const { return 8 * n_ + 3; }

  TimedTrajectory Unpack(const Eigen::VectorXd& z) const {
    TimedTrajectory t;
    t.poses.resize(n_ + 1);
    t.dts.resize(n_);
    t.poses[0] = problem_.start;
    Eigen::Vector2d p = problem_.start.position();
    double prev = problem_.start.heading;
    for (int i = 0; i < n_; ++i) {
      const double th = z(i);
      const double alpha = 0.5 * (prev + th);
      p += z(n_ + i) * HeadingVector(alpha);
      t.poses[i + 1] = {p.x(), p.y(), th};
      t.dts[i] = z(2 * n_ + i);
      prev = th;
    }
    t.residuals.resize(n_);
    for (int i = 0; i < n_; ++i) {
      t.residuals[i] = NonholonomicResidual(t.poses[i], t.poses[i + 1]);
    }
    return t;
  }

  Eigen::VectorXd Residuals(const Eigen::VectorXd& z) const {
    Eigen::VectorXd r(ResidualCount());
    int k = 0;
    const double v_lim = soft_ * limits_.v_max;
    const double a_lim = soft_ * limits_.a_max;
    const double w_lim = soft_ * limits_.yaw_rate_max;
    const double s_lim = 1.5 * params_.segment_spacing;
    const double clearance_target =
        limits_.clearance_margin + params_.obstacle_buffer;
    Eigen::Vector2d p = problem_.start.position();
    double prev_theta = problem_.start.heading;
    double prev_v = problem_.start_speed;
    double prev_dt = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double th = z(i);
      const double s = z(n_ + i);
      const double dt = z(2 * n_ + i);
      const double v = s / dt;
      const double w = (th - prev_theta) / dt;
      const double a = i == 0 ? (v - prev_v) / dt
                              : (v - prev_v) / (0.5 * (dt + prev_dt));
      r(k++) = std::sqrt(params_.weight_time * dt);
      r(k++) = std::sqrt(params_.weight_velocity) * Hinge(std::abs(v) - v_lim);
      r(k++) = std::sqrt(params_.weight_forward) * Hinge(limits_.v_min - v);
      r(k++) = std::sqrt(params_.weight_accel) * Hinge(std::abs(a) - a_lim);
      r(k++) = std::sqrt(params_.weight_yaw_rate) * Hinge(std::abs(w) - w_lim);
      r(k++) = std::sqrt(params_.weight_segment) * Hinge(std::abs(s) - s_lim);
      const Eigen::Vector2d dir = HeadingVector(0.5 * (prev_theta + th));
      const Eigen::Vector2d mid = p + 0.5 * s * dir;
      p += s * dir;
      r(k++) = ObstacleTerm(mid, clearance_target);
      // The final pose belongs to the goal term alone.
      r(k++) = i + 1 < n_ ? ObstacleTerm(p, clearance_target) : 0.0;
      prev_theta = th;
      prev_v = v;
      prev_dt = dt;
    }
    const double wg = std::sqrt(params_.weight_goal);
    r(k++) = wg * (p.x() - problem_.goal.x);
    r(k++) = wg * (p.y() - problem_.goal.y);
    r(k++) = std::sqrt(params_.weight_goal_heading) *
             WrapAngle(prev_theta - problem_.goal.heading);
    return r;
  }

  double Cost(const Eigen::VectorXd& z) const {
    return Residuals(z).squaredNorm();
  }

  void Project(Eigen::VectorXd* z) const {
    for (int i = 0; i < n_; ++i) {
      (*z)(2 * n_ + i) = std::max((*z)(2 * n_ + i), params_.min_dt);
    }
  }

  bool IsTime(int j) const { return j >= 2 * n_; }

 private:
  double ObstacleTerm(const Eigen::Vector2d& q, double target) const {
    if (problem_.costmap == nullptr) return 0.0;
    const double c = Clearance(*problem_.costmap, q);
    if (!std::isfinite(c)) return 0.0;
    return std::sqrt(params_.weight_obstacle) * Hinge(target - c);
  }

  const TebProblem& problem_;
  const PlannerLimits& limits_;
  const TebParams& params_;
  int n_;
  double soft_;
};

// One damped Gauss-Newton step on variables [begin, end). Accepts only a
// step that lowers the objective.
bool BlockStep(const Band& band, int begin, int end, double min_dt,
               Eigen::VectorXd* z, double* cost, double* lambda) {
  const int m = end - begin;
  const Eigen::VectorXd r0 = band.Residuals(*z);
  Eigen::MatrixXd jac(r0.size(), m);
  for (int c = 0; c < m; ++c) {
    const int j = begin + c;
    const double h = 1e-6 * std::max(1.0, std::abs((*z)(j)));
    Eigen::VectorXd zp = *z;
    Eigen::VectorXd zm = *z;
    zp(j) += h;
    zm(j) -= h;
    if (band.IsTime(j) && zm(j) < min_dt) {
      jac.col(c) = (band.Residuals(zp) - r0) / h;
    } else {
      jac.col(c) = (band.Residuals(zp) - band.Residuals(zm)) / (2.0 * h);
    }
  }
  const Eigen::MatrixXd h = jac.transpose() * jac;
  const Eigen::VectorXd g = jac.transpose() * r0;
  if (g.norm() == 0.0) return false;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::MatrixXd a = h;
    a.diagonal() += *lambda * (h.diagonal().array() + 1e-9).matrix();
    const Eigen::VectorXd delta = a.ldlt().solve(-g);
    if (!delta.allFinite()) {
      *lambda *= 4.0;
      continue;
    }
    Eigen::VectorXd candidate = *z;
    candidate.segment(begin, m) += delta;
    band.Project(&candidate);
    const double c = band.Cost(candidate);
    if (c < *cost) {
      *z = candidate;
      *cost = c;
      *lambda = std::max(*lambda / 3.0, 1e-9);
      return true;
    }
    *lambda *= 4.0;
  }
  return false;
}

std::vector<Eigen::Vector2d> SeedPolyline(const TebProblem& p) {
  std::vector<Eigen::Vector2d> pts;
  const Eigen::Vector2d start = p.start.position();
  pts.push_back(start);
  for (const auto& q : p.seed_path) {
    if ((q - pts.back()).norm() > 1e-9) pts.push_back(q);
  }
  if ((p.goal.position() - pts.back()).norm() > 1e-9) {
    pts.push_back(p.goal.position());
  }
  return pts;
}

struct Attempt {
  Eigen::VectorXd z;
  double seed_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
};

Attempt Optimize(const Band& band, const std::vector<Eigen::Vector2d>& seed,
                 const TebProblem& problem, const PlannerLimits& limits,
                 const TebParams& params, double dt_scale) {
  const int n = band.segments();
  // Resample the seed polyline uniformly in arc length.
  std::vector<double> cum(seed.size(), 0.0);
  for (std::size_t i = 1; i < seed.size(); ++i) {
    cum[i] = cum[i - 1] + (seed[i] - seed[i - 1]).norm();
  }
  const double total = cum.back();
  std::vector<Eigen::Vector2d> q(n + 1);
  std::size_t seg = 0;
  for (int i = 0; i <= n; ++i) {
    const double target = total * i / n;
    while (seg + 2 < seed.size() && cum[seg + 1] < target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double f = len > 0.0 ? std::clamp((target - cum[seg]) / len, 0.0, 1.0)
                               : 0.0;
    q[i] = seed[seg] + f * (seed[seg + 1] - seed[seg]);
  }
  Eigen::VectorXd z(band.size());
  const double v_ref = 0.5 * limits.v_max;
  double prev = problem.start.heading;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d d = q[i + 1] - q[i];
    double th = d.norm() > 1e-9 ? std::atan2(d.y(), d.x()) : prev;
    if (i == n - 1 && d.norm() <= 1e-9) th = problem.goal.heading;
    // Keep headings continuous so the mean-angle chord stays meaningful.
    th = prev + WrapAngle(th - prev);
    z(i) = th;
    z(n + i) = d.norm();
    z(2 * n + i) = std::max(params.min_dt, dt_scale * d.norm() / v_ref);
    prev = th;
  }
  band.Project(&z);

  Attempt out;
  out.seed_cost = band.Cost(z);
  double cost = out.seed_cost;
  double lambda_pose = 1e-3;
  double lambda_time = 1e-3;
  for (int it = 0; it < params.max_iterations; ++it) {
    const double before = cost;
    const bool moved_pose =
        BlockStep(band, 0, 2 * n, params.min_dt, &z, &cost, &lambda_pose);
    const bool moved_time =
        BlockStep(band, 2 * n, 3 * n, params.min_dt, &z, &cost, &lambda_time);
    out.iterations = it + 1;
    if (!moved_pose && !moved_time) break;
    if (before - cost <= params.relative_tolerance * std::max(before, 1e-12)) {
      break;
    }
  }
  out.z = z;
  out.final_cost = cost;
  return out;
}

}  // namespace

void PlannerLimits::Validate() const {
  if (!(v_max > 0.0) || !(a_max > 0.0) || !(yaw_rate_max > 0.0) ||
      !(lookahead > 0.0) || !(clearance_margin >= 0.0) || !(v_min >= 0.0) ||
      !(v_min <= v_max)) {
    throw std::invalid_argument("invalid planner limits");
  }
}

double TimedTrajectory::TotalTime() const {
  double t = 0.0;
  for (double dt : dts) t += dt;
  return t;
}

double TimedTrajectory::Length() const {
  double l = 0.0;
  for (std::size_t i = 1; i < poses.size(); ++i) {
    l += (poses[i].position() - poses[i - 1].position()).norm();
  }
  return l;
}

double NonholonomicResidual(const Pose2& a, const Pose2& b) {
  const Eigen::Vector2d h(std::cos(a.heading) + std::cos(b.heading),
                          std::sin(a.heading) + std::sin(b.heading));
  return std::abs(Cross2(h, b.position() - a.position()));
}

std::vector<double> SegmentVelocities(const TimedTrajectory& t) {
  std::vector<double> v(t.dts.size());
  for (std::size_t i = 0; i < t.dts.size(); ++i) {
    const Pose2& a = t.poses[i];
    const Pose2& b = t.poses[i + 1];
    const Eigen::Vector2d d = b.position() - a.position();
    const Eigen::Vector2d h(std::cos(a.heading) + std::cos(b.heading),
                            std::sin(a.heading) + std::sin(b.heading));
    const double sign = h.dot(d) < 0.0 ? -1.0 : 1.0;
    v[i] = sign * d.norm() / t.dts[i];
  }
  return v;
}

std::vector<double> SegmentYawRates(const TimedTrajectory& t) {
  std::vector<double> w(t.dts.size());
  for (std::size_t i = 0; i < t.dts.size(); ++i) {
    w[i] = WrapAngle(t.poses[i + 1].heading - t.poses[i].heading) / t.dts[i];
  }
  return w;
}

std::vector<double> SegmentAccelerations(const TimedTrajectory& t,
                                         double start_speed) {
  const std::vector<double> v = SegmentVelocities(t);
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    a[i] = i == 0 ? (v[0] - start_speed) / t.dts[0]
                  : (v[i] - v[i - 1]) / (0.5 * (t.dts[i] + t.dts[i - 1]));
  }
  return a;
}

TrajectoryCheck CheckTrajectory(const TimedTrajectory& t, const TebProblem& p,
                                const PlannerLimits& limits,
                                const TebParams& params) {
  TrajectoryCheck c;
  c.min_clearance = kInf;
  auto fail = [&c](const char* what) {
    if (c.feasible) c.reason = what;
    c.feasible = false;
  };
  for (double dt : t.dts) {
    if (!(dt > 0.0)) fail("non-positive time interval");
  }
  for (double r : t.residuals) c.max_residual = std::max(c.max_residual, r);
  for (double v : SegmentVelocities(t)) {
    c.max_speed = std::max(c.max_speed, std::abs(v));
  }
  for (double a : SegmentAccelerations(t, p.start_speed)) {
    c.max_accel = std::max(c.max_accel, std::abs(a));
  }
  for (double w : SegmentYawRates(t)) {
    c.max_yaw_rate = std::max(c.max_yaw_rate, std::abs(w));
  }
  if (p.costmap != nullptr && !t.dts.empty()) {
    const double step = 0.5 * p.costmap->geometry.resolution;
    for (std::size_t i = 0; i + 1 < t.poses.size(); ++i) {
      const Eigen::Vector2d a = t.poses[i].position();
      const Eigen::Vector2d b = t.poses[i + 1].position();
      const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / step)));
      for (int k = 1; k <= n; ++k) {
        const Eigen::Vector2d q = a + (static_cast<double>(k) / n) * (b - a);
        c.min_clearance = std::min(c.min_clearance, Clearance(*p.costmap, q));
      }
    }
  }
  c.goal_error = (t.poses.back().position() - p.goal.position()).norm();
  if (c.max_residual >= params.residual_tolerance) fail("nonholonomic residual");
  if (c.max_speed > limits.v_max) fail("speed limit");
  if (c.max_accel > limits.a_max) fail("acceleration limit");
  if (c.max_yaw_rate > limits.yaw_rate_max) fail("yaw rate limit");
  if (c.min_clearance < limits.clearance_margin) fail("clearance margin");
  if (c.goal_error > params.goal_tolerance) fail("goal not reached");
  return c;
}

TebResult TebOptimize(const TebProblem& problem, const PlannerLimits& limits,
                      const TebParams& params) {
  limits.Validate();
  TebResult result;
  const Eigen::Vector2d delta = problem.goal.position() - problem.start.position();
  if (delta.norm() <= 1e-9) {
    result.trajectory.poses = {problem.start};
    result.check = CheckTrajectory(result.trajectory, problem, limits, params);
    result.check.feasible = true;
    result.check.reason.clear();
    return result;
  }
  const std::vector<Eigen::Vector2d> seed = SeedPolyline(problem);
  double length = 0.0;
  for (std::size_t i = 1; i < seed.size(); ++i) {
    length += (seed[i] - seed[i - 1]).norm();
  }
  const int segments = std::clamp(
      static_cast<int>(std::ceil(length / params.segment_spacing)), 1,
      std::max(1, params.max_poses - 1));
  const Band band(problem, limits, params, segments);

  bool have_best = false;
  double dt_scale = 1.0;
  for (int attempt = 0; attempt <= params.retries; ++attempt) {
    const Attempt a =
        Optimize(band, seed, problem, limits, params, dt_scale);
    TebResult r;
    r.trajectory = band.Unpack(a.z);
    r.seed_cost = a.seed_cost;
    r.final_cost = a.final_cost;
    r.iterations = a.iterations;
    r.attempts = attempt + 1;
    r.check = CheckTrajectory(r.trajectory, problem, limits, params);
    if (r.check.feasible) return r;
    if (!have_best || r.final_cost < result.final_cost) {
      result = std::move(r);
      have_best = true;
    }
    result.attempts = attempt + 1;
    dt_scale *= params.retry_dt_scale;
  }
  result.status = TebStatus::kNoFeasibleTrajectory;
  result.fallback = true;
  return result;
}

}  // namespace hoverride
