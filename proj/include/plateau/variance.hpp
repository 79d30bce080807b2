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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plateau/network.hpp"
#include "plateau/rng.hpp"

namespace plateau {

enum class Scheme { Rpqc, MatrixFlow };

std::string to_string(Scheme s);                // "RPQC", "MatrixFlow"
Scheme scheme_from_string(const std::string& s);  // also "rpqc", "matrix-flow"

// Unbiased (N - 1) sample variance, summed pairwise.
double sample_mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);

// Type-7 quantile of sorted data, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

struct SampleStats {
  std::size_t samples = 0;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double var = 0.0;
  double var_ci_lo = 0.0;
  double var_ci_hi = 0.0;
};

struct BootstrapOptions {
  std::size_t resamples = 1000;
  double level = 0.95;
};

// Percentile bootstrap of the variance. Resample b draws indices from
// RngStream(seed, b, domain). The interval is widened, if needed, to contain
// the point estimate.
SampleStats summarize(const std::vector<double>& xs, std::uint64_t seed, std::uint64_t domain, int workers = 1,
                      BootstrapOptions opts = {});

// One gradient draw per sample; sample i gets RngStream(seed, i, domain).
using GradientSampler = std::function<double(RngStream&)>;

std::vector<double> draw_gradients(const GradientSampler& sampler, std::size_t samples, std::uint64_t seed,
                                   std::uint64_t domain, int workers = 1);
SampleStats estimate_grad_stats(const GradientSampler& sampler, std::size_t samples, std::uint64_t seed,
                                std::uint64_t domain, int workers = 1);

// One experiment cell.
struct CellConfig {
  int n = 2;
  Family family = Family::LocalM1Toy;
  CostKind cost = CostKind::Global;
  Scheme scheme = Scheme::Rpqc;
  std::size_t samples = 0;
  int training_pairs = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  int layers = 0;  // local-m2 only; 0 means n
  bool via_hea = false;  // local-m2: evaluate costs on the mapped circuit
};

// Rejects unsupported combinations (UsageError) and registers wider than
// 14 qubits (ResourceGuardError).
void validate_cell(const CellConfig& cell);

// Sampling domain of a cell; distinct for every (family, cost, scheme, n).
std::uint64_t cell_domain(const CellConfig& cell);

// A single random draw of the designated gradient:
//   local-m1 / RPQC     d/dtheta of the R_y angle of perceptron (1, 1)
//   global-deep / RPQC  d/dtheta of the rotation inside perceptron (1, 1),
//                       between Haar A and B
//   global-deep / flow  dC/ds at s = 0
//   local-m2 / RPQC     d/dtheta of the rotation in the first brick block
double sample_gradient(const CellConfig& cell, RngStream& rng);

double toy_model_exact(int n, CostKind kind);
double bound_rpqc(int n, CostKind kind);
// Per-term bound and the full-sum bound (n^2 terms).
double bound_matrix_flow_term(int n);
double bound_matrix_flow(int n);

struct ReportRow {
  int n = 0;
  Family family = Family::LocalM1Toy;
  CostKind cost = CostKind::Global;
  Scheme scheme = Scheme::Rpqc;
  SampleStats stats;
  std::optional<double> exact_value;
  std::optional<double> bound_value;
  std::uint64_t seed = 0;
  std::optional<double> wall_time_ms;
};

std::optional<double> exact_for(const CellConfig& cell);
std::optional<double> bound_for(const CellConfig& cell);

ReportRow run_cell(const CellConfig& cell, bool timing = false);

struct SweepConfig {
  int n_min = 2;
  int n_max = 2;
  Family family = Family::LocalM1Toy;
  std::vector<CostKind> costs{CostKind::Global};
  Scheme scheme = Scheme::Rpqc;
  std::size_t samples = 0;
  int training_pairs = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  int layers = 0;
  bool timing = false;
};

struct VarianceReport {
  std::vector<ReportRow> rows;
};

std::vector<CellConfig> sweep_cells(const SweepConfig& sweep);

// Every cell is validated before any sampling starts. on_row sees each row
// as soon as it is done, so callers can flush partial results.
VarianceReport run_sweep(const SweepConfig& sweep, const std::function<void(const ReportRow&)>& on_row = {});

extern const std::vector<std::string> kCsvColumns;

// %.17g reals, empty cells for absent optionals, LF endings. Comment lines
// (without the leading '#') go above the header.
std::string csv_header(const std::vector<std::string>& comments);
std::string csv_row(const ReportRow& row);
std::string to_csv(const VarianceReport& report, const std::vector<std::string>& comments);

}  // namespace plateau
