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

#include "hoverride/harness/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>

#include "json.hpp"

namespace hoverride {
namespace {

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Int(long long v) { return std::to_string(v); }
std::string Bool(bool v) { return v ? "true" : "false"; }

}  // namespace

std::vector<std::pair<std::string, std::string>> MetricsReport::Fields() const {
  std::string reach;
  for (std::size_t i = 0; i < velocity_step_reach.size(); ++i) {
    if (i) reach += ' ';
    reach += Num(velocity_step_reach[i]);
  }
  return {
      {"scenario", scenario},
      {"mode", mode},
      {"simulated_time", Num(simulated_time)},
      {"ticks", Int(ticks)},
      {"velocity_rmse", Num(velocity_rmse)},
      {"velocity_rmse_samples", Int(velocity_rmse_samples)},
      {"yaw_rate_rmse", Num(yaw_rate_rmse)},
      {"yaw_rate_rmse_samples", Int(yaw_rate_rmse_samples)},
      {"velocity_step_reach", reach},
      {"velocity_steps_reached", Bool(velocity_steps_reached)},
      {"velocity_step_reach_max", Num(velocity_step_reach_max)},
      {"x_gap_max", Num(x_gap_max)},
      {"x_gap_final", Num(x_gap_final)},
      {"x_gap_settle_time", Num(x_gap_settle_time)},
      {"min_clearance", Num(min_clearance)},
      {"collisions", Int(collisions)},
      {"goal_reached", Bool(goal_reached)},
      {"goal_time", Num(goal_time)},
      {"goal_distance_final", Num(goal_distance_final)},
      {"planner_cycles", Int(planner_cycles)},
      {"planner_failures", Int(planner_failures)},
      {"curvature", Num(curvature)},
      {"curvature_expected", Num(curvature_expected)},
      {"curvature_error", Num(curvature_error)},
      {"wave_amplitude", Num(wave_amplitude)},
      {"wave_amplitude_expected", Num(wave_amplitude_expected)},
      {"wave_amplitude_error", Num(wave_amplitude_error)},
      {"fault", Bool(fault)},
      {"fault_kind", fault_kind},
      {"fault_time", Num(fault_time)},
      {"fault_message", fault_message},
  };
}

std::string MetricsReport::ToText() const {
  std::string out;
  for (const auto& [k, v] : Fields()) {
    std::string value = v;
    std::replace(value.begin(), value.end(), '\n', ' ');
    out += k + "=" + value + "\n";
  }
  return out;
}

std::string MetricsReport::ToJson() const {
  using nlohmann::json;
  auto num = [](double v) -> json {
    return std::isfinite(v) ? json(v) : json(nullptr);
  };
  json j;
  j["scenario"] = scenario;
  j["mode"] = mode;
  j["simulated_time"] = num(simulated_time);
  j["ticks"] = ticks;
  j["velocity_rmse"] = num(velocity_rmse);
  j["velocity_rmse_samples"] = velocity_rmse_samples;
  j["yaw_rate_rmse"] = num(yaw_rate_rmse);
  j["yaw_rate_rmse_samples"] = yaw_rate_rmse_samples;
  json reach = json::array();
  for (double r : velocity_step_reach) reach.push_back(num(r));
  j["velocity_step_reach"] = reach;
  j["velocity_steps_reached"] = velocity_steps_reached;
  j["velocity_step_reach_max"] = num(velocity_step_reach_max);
  j["x_gap_max"] = num(x_gap_max);
  j["x_gap_final"] = num(x_gap_final);
  j["x_gap_settle_time"] = num(x_gap_settle_time);
  j["min_clearance"] = num(min_clearance);
  j["collisions"] = collisions;
  j["goal_reached"] = goal_reached;
  j["goal_time"] = num(goal_time);
  j["goal_distance_final"] = num(goal_distance_final);
  j["planner_cycles"] = planner_cycles;
  j["planner_failures"] = planner_failures;
  j["curvature"] = num(curvature);
  j["curvature_expected"] = num(curvature_expected);
  j["curvature_error"] = num(curvature_error);
  j["wave_amplitude"] = num(wave_amplitude);
  j["wave_amplitude_expected"] = num(wave_amplitude_expected);
  j["wave_amplitude_error"] = num(wave_amplitude_error);
  j["fault"] = fault;
  j["fault_kind"] = fault_kind;
  j["fault_time"] = num(fault_time);
  j["fault_message"] = fault_message;
  return j.dump(2) + "\n";
}

double WindowedRmse(const std::vector<TickSample>& samples, bool velocity) {
  double sum = 0.0;
  long long n = 0;
  for (const TickSample& s : samples) {
    if (velocity ? !s.velocity_window : !s.yaw_window) continue;
    const double e = velocity ? s.speed - s.speed_des
                              : s.yaw_rate - s.yaw_rate_des;
    sum += e * e;
    ++n;
  }
  return n == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(n));
}

CircleFit FitCircle(const std::vector<Eigen::Vector2d>& points) {
  if (points.size() < 3) {
    throw std::invalid_argument("circle fit needs at least 3 points");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  // Centre the data for conditioning.
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(n);
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d p = points[i] - mean;
    a.row(i) << p.x(), p.y(), 1.0;
    b(i) = -p.squaredNorm();
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
  CircleFit fit;
  fit.center = mean + Eigen::Vector2d(-0.5 * sol(0), -0.5 * sol(1));
  fit.radius =
      std::sqrt(std::max(0.0, 0.25 * (sol(0) * sol(0) + sol(1) * sol(1)) - sol(2)));
  return fit;
}

SineFit FitSine(const std::vector<double>& t, const std::vector<double>& y,
                double w) {
  if (t.size() != y.size() || t.size() < 3) {
    throw std::invalid_argument("sine fit needs at least 3 samples");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.row(i) << 1.0, std::sin(w * t[i]), std::cos(w * t[i]);
    b(i) = y[i];
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
  SineFit fit;
  fit.offset = sol(0);
  fit.amplitude = std::hypot(sol(1), sol(2));
  fit.phase = std::atan2(sol(2), sol(1));
  return fit;
}

MetricsReport ComputeMetrics(const Scenario& s,
                             const std::vector<TickSample>& samples) {
  MetricsReport m;
  m.scenario = s.name;
  m.mode = ModeName(s.mode);
  m.ticks = static_cast<long long>(samples.size());
  m.min_clearance = std::numeric_limits<double>::infinity();
  if (samples.empty()) return m;
  m.simulated_time = samples.back().t + s.dt;

  m.velocity_rmse = WindowedRmse(samples, true);
  m.yaw_rate_rmse = WindowedRmse(samples, false);
  for (const TickSample& x : samples) {
    m.velocity_rmse_samples += x.velocity_window;
    m.yaw_rate_rmse_samples += x.yaw_window;
  }

  // Step reach: first entry into the band after each speed change.
  const std::vector<double> changes = SpeedChangeTimes(s);
  for (std::size_t k = 0; k < changes.size(); ++k) {
    const double start = changes[k];
    const double end = k + 1 < changes.size() ? changes[k + 1]
                                              : std::numeric_limits<double>::infinity();
    const double target = ScheduledSetpoints(s, start).speed;
    if (target == 0.0) continue;
    double reach = -1.0;
    for (const TickSample& x : samples) {
      if (x.t < start || x.t >= end) continue;
      if (std::abs(x.speed - x.speed_des) <= s.metrics.reach_band * std::abs(target)) {
        reach = x.t - start;
        break;
      }
    }
    m.velocity_step_reach.push_back(reach);
    if (reach < 0.0) m.velocity_steps_reached = false;
    m.velocity_step_reach_max = std::max(m.velocity_step_reach_max, reach);
  }
  if (!m.velocity_steps_reached) {
    m.velocity_step_reach_max = std::numeric_limits<double>::infinity();
  }

  // X-gap.
  double last_outside = -1.0;
  bool prev_collision = false;
  for (const TickSample& x : samples) {
    m.x_gap_max = std::max(m.x_gap_max, std::abs(x.x_gap));
    if (std::abs(x.x_gap) >= s.metrics.gap_threshold) last_outside = x.t;
    m.min_clearance = std::min(m.min_clearance, x.clearance);
    if (x.collision && !prev_collision) ++m.collisions;
    prev_collision = x.collision;
  }
  m.x_gap_final = std::abs(samples.back().x_gap);
  if (last_outside < 0.0) {
    m.x_gap_settle_time = 0.0;
  } else if (last_outside >= samples.back().t) {
    m.x_gap_settle_time = -1.0;
  } else {
    m.x_gap_settle_time = last_outside + s.dt;
  }

  // Circle fit on the second half of the run (or from metrics.fit_start).
  const double fit_start =
      s.metrics.fit_start >= 0.0 ? s.metrics.fit_start : 0.5 * s.duration;
  if (s.mode == Mode::kManual && !s.schedule.empty()) {
    const SetpointEvent& last = s.schedule.back();
    if (last.speed != 0.0 && last.yaw_rate != 0.0) {
      std::vector<Eigen::Vector2d> pts;
      for (const TickSample& x : samples) {
        if (x.t >= fit_start) pts.emplace_back(x.x, x.y);
      }
      m.curvature_expected = std::abs(last.yaw_rate / last.speed);
      if (pts.size() >= 3) {
        const CircleFit fit = FitCircle(pts);
        m.curvature = fit.radius > 0.0 ? 1.0 / fit.radius : 0.0;
        m.curvature_error =
            std::abs(m.curvature - m.curvature_expected) / m.curvature_expected;
      } else {
        m.curvature_error = std::numeric_limits<double>::infinity();
      }
    }
  }

  // Wave: stance half-width after the first full period.
  if (s.mode == Mode::kWave && s.wave.amplitude > 0.0) {
    const double w = 2.0 * std::numbers::pi * s.wave.frequency;
    const double from = s.wave.start + 1.0 / s.wave.frequency;
    std::vector<double> ts, ys;
    for (const TickSample& x : samples) {
      if (x.t < from) continue;
      ts.push_back(x.t - s.wave.start);
      ys.push_back(0.5 * (x.foot_y[kLeft] - x.foot_y[kRight]));
    }
    m.wave_amplitude_expected = s.wave.amplitude;
    if (ts.size() >= 3) {
      m.wave_amplitude = FitSine(ts, ys, w).amplitude;
      m.wave_amplitude_error =
          std::abs(m.wave_amplitude - s.wave.amplitude) / s.wave.amplitude;
    } else {
      m.wave_amplitude_error = std::numeric_limits<double>::infinity();
    }
  }
  return m;
}

}  // namespace hoverride
