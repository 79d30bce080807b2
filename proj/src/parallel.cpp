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

#include "plateau/parallel.hpp"

#include <cstdlib>
#include <string>

#include "plateau/errors.hpp"

namespace plateau {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (requested < 0) throw UsageError("workers must be positive or 'auto'");
  if (const char* env = std::getenv("PLATEAU_LAB_WORKERS")) {
    const std::string s(env);
    if (!s.empty() && s != "auto") {
      try {
        std::size_t pos = 0;
        int n = std::stoi(s, &pos);
        if (pos == s.size() && n > 0) return n;
      } catch (const std::exception&) {
      }
      throw UsageError("PLATEAU_LAB_WORKERS must be a positive integer or 'auto', got '" + s + "'");
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

}  // namespace plateau
