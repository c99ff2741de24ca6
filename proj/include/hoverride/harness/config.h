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

// Line-oriented "key = value" text files. '#' starts a comment; blank lines
// are ignored; values are whitespace-separated tokens.

#ifndef HOVERRIDE_HARNESS_CONFIG_H_
#define HOVERRIDE_HARNESS_CONFIG_H_

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoverride {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, std::string key,
              const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::string source_;
  int line_;
  std::string key_;
};

struct ConfigEntry {
  int line = 0;
  std::string key;
  std::vector<std::string> values;
};

// Throws ConfigError on a malformed line.
std::vector<ConfigEntry> ReadConfig(std::istream& in, const std::string& source);

// Typed token accessors. Throw std::invalid_argument with a short reason.
double ParseDouble(const std::string& token);
std::int64_t ParseInt(const std::string& token);
bool ParseBool(const std::string& token);

}  // namespace hoverride

#endif  // HOVERRIDE_HARNESS_CONFIG_H_
