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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/network.hpp"
#include "plateau/variance.hpp"

namespace plateau {

enum class Command { VarianceSweep, ToyModel, VerifyMoments, BoundTable, MatrixFlow, VerifyGradients };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct ExperimentConfig {
  Command command = Command::VarianceSweep;
  int n_min = 2;
  int n_max = 2;
  Family family = Family::LocalM1Toy;
  std::vector<CostKind> costs{CostKind::Global};
  Scheme scheme = Scheme::Rpqc;
  std::optional<std::size_t> samples;
  int training_pairs = 1;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = auto
  std::string output_path;  // empty: stdout
  std::string format = "csv";
  int layers = 0;
  bool timing = false;
  std::string input_path;  // verify-gradients: {"network": ..., "cost": ...}
};

// Thrown by parse_config for --help; carries the help text (exit 0).
struct HelpRequested {
  std::string text;
};

// Command-specific defaults before any file or flag is applied.
ExperimentConfig default_config(Command c);

// Applies one JSON config entry. Unknown keys and bad values throw
// UsageError naming the key.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const nlohmann::json& value);

// "a..b" or "a".
std::pair<int, int> parse_n_range(const std::string& s);

// argv without the program name. Precedence: defaults < --config file <
// flags. Throws UsageError (exit 2) or ResourceGuardError (exit 3).
ExperimentConfig parse_config(const std::vector<std::string>& args);

// Everything that determines the output; workers is left out so that
// files do not depend on it.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Runs the command; writes results to cfg.output_path (atomically) or
// `out`. Returns the exit code. Exceptions propagate.
int dispatch(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point: parsing, dispatch and the exit-code mapping
// (0 ok, 1 failed verification or runtime error, 2 usage, 3 resource guard).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes via a temporary file in the same directory and renames it into
// place.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace plateau
