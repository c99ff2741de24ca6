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

#include "hoverride/harness/runner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>

#include "hoverride/planner/planner.h"
#include "hoverride/world/world.h"

namespace hoverride {
namespace {

using Clock = std::chrono::steady_clock;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File OpenOutput(const std::filesystem::path& path) {
  File f(std::fopen(path.string().c_str(), "w"));
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  File f = OpenOutput(path);
  std::fputs(text.c_str(), f.get());
}

// Most recent change time at or before t.
double LastChange(const std::vector<double>& changes, double t) {
  double last = 0.0;
  for (double c : changes) {
    if (c > t) break;
    last = c;
  }
  return last;
}

struct TimedPlan {
  PlanResult plan;
  double milliseconds = 0.0;
};

TimedPlan RunPlanner(const OccupancyGrid& map, const Pose2& pose,
                     double start_speed, const Pose2& goal,
                     const PlannerConfig& config, std::int64_t tick) {
  const auto t0 = Clock::now();
  TimedPlan out;
  out.plan = PlanCycle(map, pose, start_speed, goal, config, tick);
  out.milliseconds =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

void WritePlotData(const std::filesystem::path& dir, const Scenario& sc,
                   const OccupancyGrid& map,
                   const std::vector<PlanResult>& plans) {
  {
    File f = OpenOutput(dir / "obstacles.csv");
    std::fputs("id,low,vertex,x,y\n", f.get());
    for (std::size_t i = 0; i < sc.obstacles.size(); ++i) {
      const Obstacle& o = sc.obstacles[i];
      for (std::size_t k = 0; k < o.polygon.size(); ++k) {
        std::fprintf(f.get(), "%zu,%d,%zu,%.17g,%.17g\n", i, o.low ? 1 : 0, k,
                     o.polygon[k].x(), o.polygon[k].y());
      }
    }
  }
  if (sc.mode != Mode::kAutonomous) return;
  {
    File f = OpenOutput(dir / "plans.csv");
    std::fputs("tick,status,index,x,y,heading,dt\n", f.get());
    for (const PlanResult& p : plans) {
      const TimedTrajectory& tr = p.teb.trajectory;
      for (std::size_t i = 0; i < tr.poses.size(); ++i) {
        std::fprintf(f.get(), "%lld,%s,%zu,%.17g,%.17g,%.17g,%.17g\n",
                     static_cast<long long>(p.tick), PlanStatusName(p.status),
                     i, tr.poses[i].x, tr.poses[i].y, tr.poses[i].heading,
                     i < tr.dts.size() ? tr.dts[i] : 0.0);
      }
    }
  }
  std::ofstream grid((dir / "map.grid").string());
  WriteGrid(map, grid);
}

}  // namespace

const std::vector<std::string>& TrajectoryColumns() {
  static const std::vector<std::string> kColumns = {
      "t", "x", "y", "heading", "v", "psi_dot", "v_d", "psi_dot_d",
      "vel_window", "yaw_window"};
  return kColumns;
}

RunResult RunScenario(const Scenario& scenario, const RunOptions& options) {
  const auto wall0 = Clock::now();
  Scenario sc = scenario;
  if (options.seed) sc.seed = *options.seed;
  sc.Validate();

  RunResult result;
  File traj_file;
  File chan_file;
  std::filesystem::path dir;
  if (!options.out_dir.empty()) {
    dir = options.out_dir;
    std::filesystem::create_directories(dir);
    traj_file = OpenOutput(dir / "trajectory.csv");
    chan_file = OpenOutput(dir / "channels.csv");
    std::string header;
    for (const auto& c : TrajectoryColumns()) {
      header += (header.empty() ? "" : ",") + c;
    }
    std::fprintf(traj_file.get(), "%s\n", header.c_str());
    std::fputs(
        "t,v_est,psi_dot_est,x_gap,foot_y_left,foot_y_right,y_offset,com_x,"
        "com_y,com_des_x,com_des_y,u5_left,u5_right,u2_left,u2_right,"
        "q7_left,q7_right,pitch_left,pitch_right,clearance,collision\n",
        chan_file.get());
  }

  auto obstacles = std::make_shared<const ObstacleList>(sc.obstacles);
  World world = MakeWorld(sc.platform, sc.rider, sc.initial, obstacles,
                          sc.disturbances, sc.seed);
  OdometryEstimator estimator(sc.noise, sc.seed);
  std::mt19937_64 scan_rng(sc.seed ^ 0x9e3779b97f4a7c15ULL);

  const long long n_ticks = std::llround(sc.duration / sc.dt);
  const long long period_ticks = std::llround(sc.planner.period / sc.dt);
  const double max_plan_age = sc.planner.stale_periods * sc.planner.period;
  const std::vector<double> speed_changes = SpeedChangeTimes(sc);
  const std::vector<double> yaw_changes = YawRateChangeTimes(sc);
  const bool windows = sc.mode != Mode::kAutonomous;

  const bool autonomous = sc.mode == Mode::kAutonomous;
  OccupancyGrid map;
  if (autonomous) map = OccupancyGrid(MapGeometry(sc));
  LatestValueMailbox<PlanResult> mailbox;
  std::future<TimedPlan> pending;
  std::vector<PlanResult> plan_log;
  double last_speed_cmd = 0.0;
  bool arrived = false;  // latched once the planner reports the goal
  double plan_ms_total = 0.0;

  MetricsReport extra;
  extra.goal_distance_final = std::numeric_limits<double>::quiet_NaN();
  auto account = [&](TimedPlan&& tp) {
    ++result.compute.planner_cycles;
    plan_ms_total += tp.milliseconds;
    result.compute.planner_max_ms =
        std::max(result.compute.planner_max_ms, tp.milliseconds);
    if (tp.plan.status == PlanStatus::kUnreachable ||
        tp.plan.status == PlanStatus::kNoFeasibleTrajectory) {
      ++extra.planner_failures;
    }
    ++extra.planner_cycles;
    if (options.plot_data) plan_log.push_back(tp.plan);
    mailbox.Publish(std::move(tp.plan));
  };

  std::vector<TickSample> samples;
  samples.reserve(static_cast<std::size_t>(n_ticks));
  for (long long k = 0; k < n_ticks; ++k) {
    const double t = world.time;
    const EstimatedOdometry odo = estimator.Update(world, sc.dt);
    const TorsoKinematics truth = Torso(world);
    const bool use_truth = sc.feedback == Feedback::kTruth;
    const double fb_speed = use_truth ? truth.speed : odo.speed;
    const double fb_yaw_rate = use_truth ? truth.yaw_rate : odo.yaw_rate;
    const Pose2 pose_est = use_truth ? truth.pose : odo.pose;

    Setpoints sp = ScheduledSetpoints(sc, t);
    if (autonomous) {
      if (k % period_ticks == 0 && !arrived) {
        if (pending.valid()) account(pending.get());
        const RangeScan scan =
            SimulateScan(world, truth.pose, sc.scan_beams, sc.scan_range,
                         sc.noise.range_std, &scan_rng);
        map = UpdateMap(map, scan, pose_est);
        if (options.deterministic) {
          account(RunPlanner(map, pose_est, last_speed_cmd, sc.goal,
                             sc.planner, k));
        } else {
          pending = std::async(std::launch::async, RunPlanner, map, pose_est,
                               last_speed_cmd, sc.goal, sc.planner,
                               static_cast<std::int64_t>(k));
        }
      }
      const std::optional<PlanResult> plan = mailbox.Latest();
      sp.speed = 0.0;
      sp.yaw_rate = 0.0;
      if (plan && plan->status == PlanStatus::kGoalReached) arrived = true;
      if (plan && plan->status == PlanStatus::kOk && !arrived) {
        const PlannerSetpoints ps = PlanToSetpoints(
            plan->teb.trajectory, pose_est,
            t - static_cast<double>(plan->tick) * sc.dt, max_plan_age,
            sc.limits);
        sp.speed = ps.speed;
        sp.yaw_rate = ps.yaw_rate;
      }
      const double goal_distance =
          (truth.pose.position() - sc.goal.position()).norm();
      extra.goal_distance_final = goal_distance;
      if (!extra.goal_reached && goal_distance <= sc.planner.goal_tolerance) {
        extra.goal_reached = true;
        extra.goal_time = t;
      }
    }
    sp = ClampSetpoints(sp, sc.limits);
    last_speed_cmd = sp.speed;

    const ControlMeasurements meas =
        MeasureForControl(world, fb_speed, fb_yaw_rate);
    ControlDiagnostics diag;
    const ControlCommand cmd =
        ComputeControl(meas, sp, sc.gains, world.rider_params, sc.limits, &diag);

    TickSample s;
    s.t = t;
    s.x = truth.pose.x;
    s.y = truth.pose.y;
    s.heading = truth.pose.heading;
    s.speed = truth.speed;
    s.yaw_rate = truth.yaw_rate;
    s.speed_des = sp.speed;
    s.yaw_rate_des = sp.yaw_rate;
    s.y_offset = sp.y_offset;
    s.velocity_window =
        windows && t >= LastChange(speed_changes, t) + sc.metrics.transient;
    s.yaw_window =
        windows && t >= LastChange(yaw_changes, t) + sc.metrics.transient;
    s.speed_est = fb_speed;
    s.yaw_rate_est = fb_yaw_rate;
    s.x_gap = meas.feet[kLeft].x() - meas.feet[kRight].x();
    s.clearance = std::numeric_limits<double>::infinity();
    for (const Obstacle& o : *obstacles) {
      if (!o.low) {
        s.clearance = std::min(s.clearance,
                               DistanceToPolygon(o.polygon, truth.pose.position()));
      }
    }
    for (int i : {kLeft, kRight}) {
      s.foot_y[i] = meas.feet[i].y();
      s.toe_torque[i] = cmd.legs[i].toe;
      s.hip_yaw_torque[i] = cmd.legs[i].hip_yaw;
      s.toe_pitch[i] = world.rider.toe_pitch[i];
      s.platform_pitch[i] = world.platforms[i].pitch;
      if (!obstacles->empty()) {
        const Polygon deck =
            PlatformFootprint(world.platforms[i], world.platform_params);
        for (const Obstacle& o : *obstacles) {
          if (PolygonDistance(deck, o.polygon) == 0.0) s.collision = true;
        }
      }
    }
    s.com[0] = world.rider.com.x();
    s.com[1] = world.rider.com.y();
    s.com_des[0] = cmd.com_des.x();
    s.com_des[1] = cmd.com_des.y();

    if (traj_file) {
      std::fprintf(traj_file.get(),
                   "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                   s.t, s.x, s.y, s.heading, s.speed, s.yaw_rate, s.speed_des,
                   s.yaw_rate_des, s.velocity_window ? 1 : 0,
                   s.yaw_window ? 1 : 0);
      std::fprintf(chan_file.get(),
                   "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                   "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                   "%.17g,%.17g,%d\n",
                   s.t, s.speed_est, s.yaw_rate_est, s.x_gap, s.foot_y[0],
                   s.foot_y[1], s.y_offset, s.com[0], s.com[1], s.com_des[0],
                   s.com_des[1], s.toe_torque[0], s.toe_torque[1],
                   s.hip_yaw_torque[0], s.hip_yaw_torque[1], s.toe_pitch[0],
                   s.toe_pitch[1], s.platform_pitch[0], s.platform_pitch[1],
                   s.clearance, s.collision ? 1 : 0);
    }
    samples.push_back(s);

    try {
      world = WorldStep(world, cmd, sc.dt);
    } catch (const SimulationFault& f) {
      extra.fault = true;
      extra.fault_kind = FaultKindName(f.kind());
      extra.fault_message = f.what();
      extra.fault_time = t;
      result.state_dump = f.state_dump();
      break;
    }
  }
  if (pending.valid()) pending.wait();

  MetricsReport m = ComputeMetrics(sc, samples);
  m.goal_reached = extra.goal_reached;
  m.goal_time = extra.goal_time;
  m.goal_distance_final = autonomous ? extra.goal_distance_final : 0.0;
  m.planner_cycles = extra.planner_cycles;
  m.planner_failures = extra.planner_failures;
  m.fault = extra.fault;
  m.fault_kind = extra.fault_kind;
  m.fault_message = extra.fault_message;
  m.fault_time = extra.fault_time;
  result.metrics = m;

  result.compute.planner_mean_ms =
      result.compute.planner_cycles > 0
          ? plan_ms_total / static_cast<double>(result.compute.planner_cycles)
          : 0.0;
  result.compute.wall_seconds =
      std::chrono::duration<double>(Clock::now() - wall0).count();

  if (!dir.empty()) {
    traj_file.reset();
    chan_file.reset();
    WriteText(dir / "metrics.txt", m.ToText());
    WriteText(dir / "metrics.json", m.ToJson());
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "planner_cycles=%lld\nplanner_mean_ms=%.6f\n"
                  "planner_max_ms=%.6f\nwall_seconds=%.6f\n",
                  result.compute.planner_cycles, result.compute.planner_mean_ms,
                  result.compute.planner_max_ms, result.compute.wall_seconds);
    WriteText(dir / "compute.txt", buf);
    if (m.fault) {
      WriteText(dir / "fault.txt", m.fault_kind + ": " + m.fault_message +
                                       "\n" + result.state_dump + "\n");
    }
    if (options.plot_data) WritePlotData(dir, sc, map, plan_log);
  }
  if (options.keep_samples) result.samples = std::move(samples);
  return result;
}

}  // namespace hoverride
