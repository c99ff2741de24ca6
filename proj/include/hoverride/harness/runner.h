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

// Lockstep scenario execution: 1 kHz control in simulated time, the
// autonomy stack every planner period, metrics and log files at the end.

#ifndef HOVERRIDE_HARNESS_RUNNER_H_
#define HOVERRIDE_HARNESS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoverride/harness/metrics.h"
#include "hoverride/harness/scenario.h"

namespace hoverride {

struct RunOptions {
  // Output directory; nothing is written when empty.
  std::string out_dir;
  // true: the planner runs synchronously at its tick and its result is
  // used immediately. false: it runs on a worker and its result is
  // injected at the next planner tick (one period of latency).
  bool deterministic = true;
  bool plot_data = false;
  std::optional<std::uint64_t> seed;
  bool keep_samples = true;
};

struct ComputeStats {
  long long planner_cycles = 0;
  double planner_mean_ms = 0.0;
  double planner_max_ms = 0.0;
  double wall_seconds = 0.0;
};

struct RunResult {
  MetricsReport metrics;
  std::vector<TickSample> samples;
  ComputeStats compute;
  std::string state_dump;  // on fault
};

// Never throws on simulation faults: they are reported in the metrics and
// the logs written so far are flushed. Throws std::runtime_error when the
// output directory cannot be written.
RunResult RunScenario(const Scenario& scenario, const RunOptions& options = {});

// Column names of trajectory.csv, in order.
const std::vector<std::string>& TrajectoryColumns();

}  // namespace hoverride

#endif  // HOVERRIDE_HARNESS_RUNNER_H_
