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

#ifndef HOVERRIDE_HARNESS_SWEEP_H_
#define HOVERRIDE_HARNESS_SWEEP_H_

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hoverride/harness/metrics.h"
#include "hoverride/harness/scenario.h"

namespace hoverride {

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

// Sweep file:
//   scenario = velocity_steps.scn   (relative to the sweep file)
//   threads = 4                     (optional)
//   gains.kp_vel = 0.03 0.06 0.12   (any scalar scenario key)
// Rows are the Cartesian product of the axes; the last axis varies fastest.
struct SweepSpec {
  std::string scenario_path;
  int threads = 1;
  std::vector<SweepAxis> axes;
};

SweepSpec ParseSweepSpec(std::istream& in, const std::string& source,
                         const std::string& base_dir);
SweepSpec LoadSweepSpec(const std::string& path);

struct SweepRow {
  std::vector<std::pair<std::string, std::string>> assignment;
  std::string status;  // "ok", "fault" or "error"
  std::string detail;
  MetricsReport metrics;
};

// Runs every grid point on up to `threads` workers. Row order follows the
// grid, independent of scheduling. A fault or invalid value in one row is
// recorded in that row only.
std::vector<SweepRow> RunSweep(const Scenario& base,
                               const std::vector<SweepAxis>& axes, int threads);

void WriteSweepTable(const std::vector<SweepRow>& rows,
                     const std::vector<SweepAxis>& axes, std::ostream& out);

}  // namespace hoverride

#endif  // HOVERRIDE_HARNESS_SWEEP_H_
