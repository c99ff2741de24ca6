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

#include "hoverride/harness/config.h"

#include <charconv>
#include <cmath>
#include <sstream>

namespace hoverride {

ConfigError::ConfigError(std::string source, int line, std::string key,
                         const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) +
                         (key.empty() ? "" : ": '" + key + "'") + ": " +
                         message),
      source_(std::move(source)),
      line_(line),
      key_(std::move(key)) {}

std::vector<ConfigEntry> ReadConfig(std::istream& in,
                                    const std::string& source) {
  std::vector<ConfigEntry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line, "", "expected 'key = value'");
    }
    ConfigEntry e;
    e.line = line;
    std::istringstream ks(raw.substr(0, eq));
    std::string extra;
    if (!(ks >> e.key) || (ks >> extra)) {
      throw ConfigError(source, line, "", "key must be a single word");
    }
    std::istringstream vs(raw.substr(eq + 1));
    std::string token;
    while (vs >> token) e.values.push_back(token);
    if (e.values.empty()) {
      throw ConfigError(source, line, e.key, "missing value");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

double ParseDouble(const std::string& token) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + token + "'");
  }
  if (pos != token.size() || !std::isfinite(v)) {
    throw std::invalid_argument("expected a finite number, got '" + token + "'");
  }
  return v;
}

std::int64_t ParseInt(const std::string& token) {
  std::int64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("expected an integer, got '" + token + "'");
  }
  return v;
}

bool ParseBool(const std::string& token) {
  if (token == "true" || token == "1" || token == "yes") return true;
  if (token == "false" || token == "0" || token == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + token + "'");
}

}  // namespace hoverride
