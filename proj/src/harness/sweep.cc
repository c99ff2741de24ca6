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

#include "hoverride/harness/sweep.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "hoverride/harness/config.h"
#include "hoverride/harness/runner.h"

namespace hoverride {

SweepSpec ParseSweepSpec(std::istream& in, const std::string& source,
                         const std::string& base_dir) {
  SweepSpec spec;
  std::set<std::string> seen;
  for (const ConfigEntry& e : ReadConfig(in, source)) {
    if (!seen.insert(e.key).second) {
      throw ConfigError(source, e.line, e.key, "duplicate key");
    }
    try {
      if (e.key == "scenario") {
        if (e.values.size() != 1) throw std::invalid_argument("expected a path");
        std::filesystem::path p(e.values[0]);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        spec.scenario_path = p.string();
      } else if (e.key == "threads") {
        if (e.values.size() != 1) throw std::invalid_argument("expected one value");
        const auto n = ParseInt(e.values[0]);
        if (n < 1 || n > 256) throw std::invalid_argument("threads must be 1..256");
        spec.threads = static_cast<int>(n);
      } else {
        spec.axes.push_back({e.key, e.values});
      }
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(source, e.line, e.key, ex.what());
    }
  }
  if (spec.scenario_path.empty()) {
    throw ConfigError(source, 0, "scenario", "missing scenario path");
  }
  return spec;
}

SweepSpec LoadSweepSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open sweep file");
  return ParseSweepSpec(in, path,
                        std::filesystem::path(path).parent_path().string());
}

std::vector<SweepRow> RunSweep(const Scenario& base,
                               const std::vector<SweepAxis>& axes,
                               int threads) {
  std::size_t count = 1;
  for (const SweepAxis& a : axes) count *= a.values.size();
  std::vector<SweepRow> rows(count);
  for (std::size_t r = 0; r < count; ++r) {
    std::size_t rest = r;
    rows[r].assignment.resize(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      const std::size_t n = axes[k].values.size();
      rows[r].assignment[k] = {axes[k].key, axes[k].values[rest % n]};
      rest /= n;
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t r = next++; r < count; r = next++) {
      SweepRow& row = rows[r];
      try {
        Scenario s = base;
        for (const auto& [key, value] : row.assignment) {
          ApplyOverride(&s, key, {value});
        }
        RunOptions opt;
        opt.keep_samples = false;
        row.metrics = RunScenario(s, opt).metrics;
        row.status = row.metrics.fault ? "fault" : "ok";
        row.detail = row.metrics.fault_kind;
      } catch (const std::exception& e) {
        row.status = "error";
        row.detail = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void WriteSweepTable(const std::vector<SweepRow>& rows,
                     const std::vector<SweepAxis>& axes, std::ostream& out) {
  auto csv = [](std::string v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) {
      if (c == '"') q += '"';
      q += c == '\n' ? ' ' : c;
    }
    return q + "\"";
  };
  const MetricsReport blank;
  out << "row";
  for (const SweepAxis& a : axes) out << ',' << csv(a.key);
  out << ",status,detail";
  for (const auto& [k, v] : blank.Fields()) out << ',' << k;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << r;
    for (const auto& [k, v] : rows[r].assignment) out << ',' << csv(v);
    out << ',' << rows[r].status << ',' << csv(rows[r].detail);
    for (const auto& [k, v] : rows[r].metrics.Fields()) out << ',' << csv(v);
    out << '\n';
  }
}

}  // namespace hoverride
