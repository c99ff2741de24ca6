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

// hoverride: run, sweep and validate rider scenarios.
//
//   hoverride run <scenario> [--seed N] [--out DIR] [--deterministic]
//                            [--plot-data]
//   hoverride sweep <file> [--out FILE] [--threads N]
//   hoverride validate <scenario>
//
// Exit status: 0 success, 1 simulation fault (or any faulted sweep row),
// 2 configuration error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hoverride/harness/config.h"
#include "hoverride/harness/runner.h"
#include "hoverride/harness/scenario.h"
#include "hoverride/harness/sweep.h"

namespace {

constexpr int kExitFault = 1;
constexpr int kExitConfig = 2;

int Run(const std::string& path, std::optional<std::uint64_t> seed,
        std::string out, bool deterministic, bool plot_data) {
  const hoverride::Scenario s = hoverride::LoadScenario(path);
  if (out.empty()) out = "out/" + s.name;
  hoverride::RunOptions opt;
  opt.out_dir = out;
  opt.deterministic = deterministic;
  opt.plot_data = plot_data;
  opt.seed = seed;
  opt.keep_samples = false;
  const hoverride::RunResult r = hoverride::RunScenario(s, opt);
  std::cout << r.metrics.ToText();
  std::cout << "output=" << out << "\n";
  if (r.metrics.fault) {
    std::cerr << "fault: " << r.metrics.fault_kind << ": "
              << r.metrics.fault_message << "\n"
              << r.state_dump << "\n";
    return kExitFault;
  }
  return 0;
}

int Sweep(const std::string& path, const std::string& out, int threads) {
  const hoverride::SweepSpec spec = hoverride::LoadSweepSpec(path);
  const hoverride::Scenario base = hoverride::LoadScenario(spec.scenario_path);
  const auto rows =
      hoverride::RunSweep(base, spec.axes, threads > 0 ? threads : spec.threads);
  if (out.empty()) {
    hoverride::WriteSweepTable(rows, spec.axes, std::cout);
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write '" << out << "'\n";
      return kExitConfig;
    }
    hoverride::WriteSweepTable(rows, spec.axes, f);
  }
  int faulted = 0;
  for (const auto& r : rows) faulted += r.status != "ok";
  std::cerr << rows.size() << " rows, " << faulted << " not ok\n";
  return faulted > 0 ? kExitFault : 0;
}

int Validate(const std::string& path) {
  const hoverride::Scenario s = hoverride::LoadScenario(path);
  std::printf("ok: %s (mode %s, %.3f s, seed %llu, %zu obstacles, %zu events)\n",
              s.name.c_str(), hoverride::ModeName(s.mode), s.duration,
              static_cast<unsigned long long>(s.seed), s.obstacles.size(),
              s.schedule.size() + s.offsets.size() + s.disturbances.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for a biped riding two self-balancing platforms"};
  app.require_subcommand(1);

  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool deterministic = false;
  bool plot_data = false;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario, "Scenario file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out, "Output directory (default out/<name>)");
  run->add_flag("--deterministic", deterministic,
                "Run the planner synchronously at its tick");
  run->add_flag("--plot-data", plot_data,
                "Also write obstacles, plans and the final map");

  std::string spec;
  std::string sweep_out;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a gain grid");
  sweep->add_option("spec", spec, "Sweep file")->required();
  sweep->add_option("--out", sweep_out, "CSV table path (default stdout)");
  sweep->add_option("--threads", threads, "Worker threads (default from the sweep file)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and check a scenario");
  validate->add_option("scenario", validate_path, "Scenario file")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return Run(scenario, seed, out, deterministic, plot_data);
    if (*sweep) return Sweep(spec, sweep_out, threads);
    if (*validate) return Validate(validate_path);
  } catch (const hoverride::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
