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

#ifndef HOVERRIDE_COMMON_FAULT_H_
#define HOVERRIDE_COMMON_FAULT_H_

#include <stdexcept>
#include <string>

namespace hoverride {

enum class FaultKind {
  kNumericalDivergence,
  kRiderFell,
};

const char* FaultKindName(FaultKind kind);

// Raised by the simulation when the physical state leaves its valid domain.
// The state dump is filled in by whoever owns the full world state.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(FaultKind kind, const std::string& what,
                  std::string state_dump = {})
      : std::runtime_error(what), kind_(kind), state_dump_(std::move(state_dump)) {}

  FaultKind kind() const { return kind_; }
  const std::string& state_dump() const { return state_dump_; }

 private:
  FaultKind kind_;
  std::string state_dump_;
};

}  // namespace hoverride

#endif  // HOVERRIDE_COMMON_FAULT_H_
