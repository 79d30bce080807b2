// Copyright 2026 The plateau-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace plateau {

// Bad arguments or malformed configuration. Maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested size exceeds the register limit. Maps to exit code 3.
class ResourceGuardError : public std::runtime_error {
 public:
  explicit ResourceGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical invariant violated inside the simulator (non-unitary gate,
// cost out of range, ...).
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plateau
