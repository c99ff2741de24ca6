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

#include "hoverride/harness/scenario.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hoverride/harness/config.h"
#include "hoverride/planner/occupancy_grid.h"

namespace hoverride {
namespace {

using Tokens = std::vector<std::string>;
using Setter = std::function<void(Scenario&, const Tokens&)>;

void ExpectCount(const Tokens& v, std::size_t lo, std::size_t hi) {
  if (v.size() < lo || v.size() > hi) {
    if (lo == hi) {
      throw std::invalid_argument("expected " + std::to_string(lo) +
                                  " value(s), got " + std::to_string(v.size()));
    }
    throw std::invalid_argument("expected " + std::to_string(lo) + " to " +
                                std::to_string(hi) + " values, got " +
                                std::to_string(v.size()));
  }
}

Setter Number(std::function<double&(Scenario&)> field) {
  return [field](Scenario& s, const Tokens& v) {
    ExpectCount(v, 1, 1);
    field(s) = ParseDouble(v[0]);
  };
}

Setter Integer(std::function<int&(Scenario&)> field) {
  return [field](Scenario& s, const Tokens& v) {
    ExpectCount(v, 1, 1);
    const std::int64_t x = ParseInt(v[0]);
    if (x < -1000000000 || x > 1000000000) {
      throw std::invalid_argument("integer out of range");
    }
    field(s) = static_cast<int>(x);
  };
}

Pose2 ParsePose(const Tokens& v) {
  ExpectCount(v, 2, 3);
  return {ParseDouble(v[0]), ParseDouble(v[1]),
          v.size() == 3 ? ParseDouble(v[2]) : 0.0};
}

Obstacle ParseObstacle(const Tokens& v) {
  if (v.empty()) throw std::invalid_argument("missing obstacle shape");
  Tokens args(v.begin() + 1, v.end());
  Obstacle o;
  if (!args.empty() && args.back() == "low") {
    o.low = true;
    args.pop_back();
  }
  if (v[0] == "box") {
    ExpectCount(args, 4, 5);
    const double lx = ParseDouble(args[2]);
    const double ly = ParseDouble(args[3]);
    if (!(lx > 0.0) || !(ly > 0.0)) {
      throw std::invalid_argument("box sides must be positive");
    }
    o.polygon = MakeBox({ParseDouble(args[0]), ParseDouble(args[1])}, lx, ly,
                        args.size() == 5 ? ParseDouble(args[4]) : 0.0);
  } else if (v[0] == "polygon") {
    if (args.size() < 6 || args.size() % 2 != 0) {
      throw std::invalid_argument("polygon needs at least 3 x y pairs");
    }
    Polygon p;
    for (std::size_t i = 0; i < args.size(); i += 2) {
      p.emplace_back(ParseDouble(args[i]), ParseDouble(args[i + 1]));
    }
    o.polygon = NormalizeConvexPolygon(std::move(p));
  } else {
    throw std::invalid_argument("obstacle shape must be 'box' or 'polygon'");
  }
  return o;
}

Disturbance ParseDisturbance(const Tokens& v) {
  ExpectCount(v, 4, 4);
  Disturbance d;
  d.trigger_time = ParseDouble(v[0]);
  if (d.trigger_time < 0.0) {
    throw std::invalid_argument("trigger time must be >= 0");
  }
  if (v[1] == "left") {
    d.target = Disturbance::Target::kLeftPlatform;
  } else if (v[1] == "right") {
    d.target = Disturbance::Target::kRightPlatform;
  } else if (v[1] == "com") {
    d.target = Disturbance::Target::kRiderCom;
  } else {
    throw std::invalid_argument("disturbance target must be left, right or com");
  }
  d.impulse = {ParseDouble(v[2]), ParseDouble(v[3])};
  return d;
}

void LoadMapFile(Scenario& s, const Tokens& v) {
  ExpectCount(v, 1, 1);
  std::filesystem::path p(v[0]);
  if (p.is_relative() && !s.base_dir.empty()) p = std::filesystem::path(s.base_dir) / p;
  const OccupancyGrid grid = ReadGridFile(p.string());
  const GridGeometry& g = grid.geometry();
  for (int k = 0; k < g.size(); ++k) {
    if (grid.at(k) != CellState::kOccupied) continue;
    s.obstacles.push_back(
        {MakeBox(g.CellCenter(g.Cell(k)), g.resolution, g.resolution), false});
  }
}

// Keys that may repeat; each occurrence appends.
const std::set<std::string>& ListKeys() {
  static const std::set<std::string> kKeys = {
      "setpoint", "y_offset_event", "obstacle", "disturbance", "map_file"};
  return kKeys;
}

// Keys whose change requires retuning the rider balance gains.
bool AffectsBalance(const std::string& key) {
  return key.rfind("platform.", 0) == 0 || key.rfind("rider.", 0) == 0;
}

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> kSetters = [] {
    std::map<std::string, Setter> m;
    m["name"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 1, 1);
      s.name = v[0];
    };
    m["duration"] = Number([](Scenario& s) -> double& { return s.duration; });
    m["dt"] = Number([](Scenario& s) -> double& { return s.dt; });
    m["seed"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 1, 1);
      const std::int64_t x = ParseInt(v[0]);
      if (x < 0) throw std::invalid_argument("seed must be >= 0");
      s.seed = static_cast<std::uint64_t>(x);
    };
    m["mode"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 1, 1);
      if (v[0] == "manual") {
        s.mode = Mode::kManual;
      } else if (v[0] == "autonomous") {
        s.mode = Mode::kAutonomous;
      } else if (v[0] == "wave") {
        s.mode = Mode::kWave;
      } else {
        throw std::invalid_argument("mode must be manual, autonomous or wave");
      }
    };
    m["feedback"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 1, 1);
      if (v[0] == "estimator") {
        s.feedback = Feedback::kEstimator;
      } else if (v[0] == "truth") {
        s.feedback = Feedback::kTruth;
      } else {
        throw std::invalid_argument("feedback must be estimator or truth");
      }
    };

#define HR_FIELD(key, expr) \
  m[key] = Number([](Scenario& s) -> double& { return s.expr; })
    HR_FIELD("platform.mass", platform.mass);
    HR_FIELD("platform.pitch_inertia", platform.pitch_inertia);
    HR_FIELD("platform.yaw_inertia", platform.yaw_inertia);
    HR_FIELD("platform.stiffness", platform.stiffness);
    HR_FIELD("platform.pitch_damping", platform.pitch_damping);
    HR_FIELD("platform.yaw_damping", platform.yaw_damping);
    HR_FIELD("platform.thrust_gain", platform.thrust_gain);
    HR_FIELD("platform.torque_limit", platform.torque_limit);
    HR_FIELD("platform.wheel_radius", platform.wheel_radius);
    HR_FIELD("platform.deck_half_length", platform.deck_half_length);
    HR_FIELD("platform.deck_half_width", platform.deck_half_width);
    HR_FIELD("platform.deck_height", platform.deck_height);

    HR_FIELD("rider.mass", rider.mass);
    HR_FIELD("rider.com_height", rider.com_height);
    HR_FIELD("rider.com_time_constant", rider.com_time_constant);
    HR_FIELD("rider.nominal_half_width", rider.nominal_half_width);
    HR_FIELD("rider.toe_filter_time_constant", rider.toe_filter_time_constant);
    HR_FIELD("rider.hip_yaw_limit", rider.hip_yaw_limit);

    HR_FIELD("gains.kp_x", gains.kp_x);
    HR_FIELD("gains.kp_toe_diff", gains.kp_toe_diff);
    HR_FIELD("gains.kd_toe_diff", gains.kd_toe_diff);
    HR_FIELD("gains.kp_y", gains.kp_y);
    HR_FIELD("gains.kp_hip_yaw", gains.kp_hip_yaw);
    HR_FIELD("gains.kp_vel", gains.kp_vel);
    HR_FIELD("gains.kp_yaw", gains.kp_yaw);
    HR_FIELD("gains.kp_pitch", gains.kp_pitch);
    HR_FIELD("gains.kp_shift", gains.kp_shift);
    HR_FIELD("gains.kd_damping", gains.kd_damping);

    HR_FIELD("limits.max_speed", limits.max_speed);
    HR_FIELD("limits.max_yaw_rate", limits.max_yaw_rate);
    HR_FIELD("limits.max_com_shift_x", limits.max_com_shift_x);
    HR_FIELD("limits.channel_torque", limits.channel_torque);
    HR_FIELD("limits.hip_yaw_limit", limits.hip_yaw_limit);

    HR_FIELD("noise.speed_std", noise.speed_std);
    HR_FIELD("noise.yaw_rate_std", noise.yaw_rate_std);
    HR_FIELD("noise.position_std", noise.position_std);
    HR_FIELD("noise.heading_std", noise.heading_std);
    HR_FIELD("noise.range_std", noise.range_std);
    HR_FIELD("noise.filter_time_constant", noise.filter_time_constant);

    HR_FIELD("planner.period", planner.period);
    HR_FIELD("planner.goal_tolerance", planner.goal_tolerance);
    HR_FIELD("planner.v_max", planner.limits.v_max);
    HR_FIELD("planner.v_min", planner.limits.v_min);
    HR_FIELD("planner.a_max", planner.limits.a_max);
    HR_FIELD("planner.yaw_rate_max", planner.limits.yaw_rate_max);
    HR_FIELD("planner.lookahead", planner.limits.lookahead);
    HR_FIELD("planner.clearance_margin", planner.limits.clearance_margin);
    HR_FIELD("planner.inflation_radius", planner.costmap.inflation_radius);
    HR_FIELD("planner.decay", planner.costmap.decay);
    HR_FIELD("planner.robot_radius", planner.costmap.robot_radius);
    HR_FIELD("planner.segment_spacing", planner.teb.segment_spacing);
    HR_FIELD("planner.obstacle_buffer", planner.teb.obstacle_buffer);
    HR_FIELD("planner.weight_time", planner.teb.weight_time);
    HR_FIELD("planner.weight_obstacle", planner.teb.weight_obstacle);

    HR_FIELD("initial.half_width", initial.half_width);
    HR_FIELD("initial.x_gap", initial.x_gap);
    HR_FIELD("initial.speed", initial.speed);

    HR_FIELD("wave.base", wave.base);
    HR_FIELD("wave.amplitude", wave.amplitude);
    HR_FIELD("wave.frequency", wave.frequency);
    HR_FIELD("wave.speed", wave.speed);
    HR_FIELD("wave.yaw_rate", wave.yaw_rate);
    HR_FIELD("wave.start", wave.start);

    HR_FIELD("map.resolution", map.resolution);
    HR_FIELD("map.margin", map.margin);
    HR_FIELD("scan.range", scan_range);

    HR_FIELD("metrics.transient", metrics.transient);
    HR_FIELD("metrics.fit_start", metrics.fit_start);
    HR_FIELD("metrics.gap_threshold", metrics.gap_threshold);
    HR_FIELD("metrics.reach_band", metrics.reach_band);
#undef HR_FIELD

    m["planner.stale_periods"] =
        Integer([](Scenario& s) -> int& { return s.planner.stale_periods; });
    m["planner.max_poses"] =
        Integer([](Scenario& s) -> int& { return s.planner.teb.max_poses; });
    m["planner.max_iterations"] = Integer(
        [](Scenario& s) -> int& { return s.planner.teb.max_iterations; });
    m["planner.retries"] =
        Integer([](Scenario& s) -> int& { return s.planner.teb.retries; });
    m["scan.beams"] = Integer([](Scenario& s) -> int& { return s.scan_beams; });

    m["initial.pose"] = [](Scenario& s, const Tokens& v) {
      s.initial.pose = ParsePose(v);
    };
    m["goal"] = [](Scenario& s, const Tokens& v) {
      s.goal = ParsePose(v);
      s.has_goal = true;
    };
    m["y_offset"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 1, 1);
      s.rider.nominal_half_width = ParseDouble(v[0]);
    };
    m["map.origin"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 2, 2);
      s.map.origin = {ParseDouble(v[0]), ParseDouble(v[1])};
      s.map.automatic = false;
    };
    m["map.size"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 2, 2);
      s.map.size = {ParseDouble(v[0]), ParseDouble(v[1])};
      s.map.automatic = false;
    };
    m["setpoint"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 3, 3);
      s.schedule.push_back(
          {ParseDouble(v[0]), ParseDouble(v[1]), ParseDouble(v[2])});
    };
    m["y_offset_event"] = [](Scenario& s, const Tokens& v) {
      ExpectCount(v, 2, 2);
      s.offsets.push_back({ParseDouble(v[0]), ParseDouble(v[1])});
    };
    m["obstacle"] = [](Scenario& s, const Tokens& v) {
      s.obstacles.push_back(ParseObstacle(v));
    };
    m["disturbance"] = [](Scenario& s, const Tokens& v) {
      s.disturbances.push_back(ParseDisturbance(v));
    };
    m["map_file"] = LoadMapFile;
    return m;
  }();
  return kSetters;
}

template <typename Event>
void CheckSorted(const std::vector<Event>& events, const char* what) {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].time < 0.0) {
      throw std::invalid_argument(std::string(what) + " times must be >= 0");
    }
    if (i > 0 && events[i].time < events[i - 1].time) {
      throw std::invalid_argument(std::string(what) + " times must be sorted");
    }
  }
}

}  // namespace

const char* ModeName(Mode m) {
  switch (m) {
    case Mode::kManual:
      return "manual";
    case Mode::kAutonomous:
      return "autonomous";
    case Mode::kWave:
      return "wave";
  }
  return "unknown";
}

void Scenario::Validate() const {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (!(dt > 0.0 && dt <= 2e-3)) {
    throw std::invalid_argument("dt must be in (0, 2 ms]");
  }
  platform.Validate();
  rider.Validate();
  gains.Validate();
  planner.Validate();
  const double ticks = planner.period / dt;
  if (std::abs(ticks - std::round(ticks)) > 1e-6 || std::round(ticks) < 1) {
    throw std::invalid_argument("planner period must be a multiple of dt");
  }
  const double limit_values[] = {limits.max_speed, limits.max_yaw_rate,
                                 limits.max_com_shift_x, limits.channel_torque,
                                 limits.hip_yaw_limit};
  for (double v : limit_values) {
    if (!(v > 0.0)) throw std::invalid_argument("command limits must be > 0");
  }
  CheckSorted(schedule, "setpoint");
  CheckSorted(offsets, "y_offset_event");
  if (mode == Mode::kAutonomous && !has_goal) {
    throw std::invalid_argument("autonomous mode requires a goal");
  }
  if (mode == Mode::kWave && !(wave.frequency > 0.0)) {
    throw std::invalid_argument("wave frequency must be > 0");
  }
  if (scan_beams < 1 || scan_beams > 100000 || !(scan_range > 0.0)) {
    throw std::invalid_argument("scan needs 1..100000 beams and range > 0");
  }
  if (!(map.resolution > 0.0) || !(map.margin >= 0.0)) {
    throw std::invalid_argument("map resolution must be > 0");
  }
  if (!map.automatic && !(map.size.x() > 0.0 && map.size.y() > 0.0)) {
    throw std::invalid_argument("explicit map needs map.origin and map.size");
  }
  if (!(metrics.transient >= 0.0) || !(metrics.gap_threshold > 0.0) ||
      !(metrics.reach_band > 0.0)) {
    throw std::invalid_argument("invalid metrics settings");
  }
  if (!(initial.half_width > 0.0)) {
    throw std::invalid_argument("initial.half_width must be > 0");
  }
}

Scenario ParseScenario(std::istream& in, const std::string& source,
                       const std::string& base_dir) {
  Scenario s;
  s.source = source;
  s.base_dir = base_dir;
  const std::vector<ConfigEntry> entries = ReadConfig(in, source);
  std::set<std::string> seen;
  int last_line = 0;
  for (const ConfigEntry& e : entries) {
    last_line = e.line;
    const auto it = Setters().find(e.key);
    if (it == Setters().end()) {
      throw ConfigError(source, e.line, e.key, "unknown key");
    }
    if (!ListKeys().count(e.key) && !seen.insert(e.key).second) {
      throw ConfigError(source, e.line, e.key, "duplicate key");
    }
    try {
      it->second(s, e.values);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError(source, e.line, e.key, ex.what());
    }
  }
  TuneBalance(s.platform, &s.rider);
  try {
    s.Validate();
  } catch (const std::exception& ex) {
    throw ConfigError(source, last_line, "", ex.what());
  }
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open scenario file");
  const std::filesystem::path p(path);
  return ParseScenario(in, path, p.parent_path().string());
}

void ApplyOverride(Scenario* s, const std::string& key,
                   const std::vector<std::string>& values) {
  const auto it = Setters().find(key);
  if (it == Setters().end()) {
    throw std::invalid_argument("unknown key '" + key + "'");
  }
  if (ListKeys().count(key)) {
    throw std::invalid_argument("list key '" + key + "' cannot be overridden");
  }
  it->second(*s, values);
  if (AffectsBalance(key)) TuneBalance(s->platform, &s->rider);
  s->Validate();
}

Setpoints ScheduledSetpoints(const Scenario& s, double t) {
  Setpoints sp;
  sp.y_offset = s.rider.nominal_half_width;
  switch (s.mode) {
    case Mode::kManual:
      for (const SetpointEvent& e : s.schedule) {
        if (e.time > t) break;
        sp.speed = e.speed;
        sp.yaw_rate = e.yaw_rate;
      }
      for (const OffsetEvent& e : s.offsets) {
        if (e.time > t) break;
        sp.y_offset = e.y_offset;
      }
      break;
    case Mode::kWave:
      sp.speed = s.wave.speed;
      sp.yaw_rate = s.wave.yaw_rate;
      sp.y_offset = s.wave.base;
      if (t >= s.wave.start) {
        sp.y_offset += s.wave.amplitude *
                       std::sin(2.0 * std::numbers::pi * s.wave.frequency *
                                (t - s.wave.start));
      }
      break;
    case Mode::kAutonomous:
      break;
  }
  return sp;
}

namespace {

std::vector<double> ChangeTimes(const Scenario& s,
                                double (*value)(const SetpointEvent&)) {
  std::vector<double> times = {0.0};
  if (s.mode != Mode::kManual) return times;
  double current = 0.0;
  for (const SetpointEvent& e : s.schedule) {
    if (value(e) != current) {
      if (e.time > times.back()) {
        times.push_back(e.time);
      }
      current = value(e);
    }
  }
  return times;
}

}  // namespace

std::vector<double> SpeedChangeTimes(const Scenario& s) {
  return ChangeTimes(s, [](const SetpointEvent& e) { return e.speed; });
}

std::vector<double> YawRateChangeTimes(const Scenario& s) {
  return ChangeTimes(s, [](const SetpointEvent& e) { return e.yaw_rate; });
}

GridGeometry MapGeometry(const Scenario& s) {
  GridGeometry g;
  g.resolution = s.map.resolution;
  Eigen::Vector2d lo, hi;
  if (s.map.automatic) {
    lo = hi = s.initial.pose.position();
    if (s.has_goal) {
      lo = lo.cwiseMin(s.goal.position());
      hi = hi.cwiseMax(s.goal.position());
    }
    for (const Obstacle& o : s.obstacles) {
      for (const auto& v : o.polygon) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
    }
    lo.array() -= s.map.margin;
    hi.array() += s.map.margin;
  } else {
    lo = s.map.origin;
    hi = s.map.origin + s.map.size;
  }
  g.origin = lo;
  g.width = std::max(1, static_cast<int>(std::ceil((hi.x() - lo.x()) / g.resolution)));
  g.height = std::max(1, static_cast<int>(std::ceil((hi.y() - lo.y()) / g.resolution)));
  return g;
}

}  // namespace hoverride
