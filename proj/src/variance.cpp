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

#include "plateau/variance.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

#include "plateau/errors.hpp"
#include "plateau/gradient.hpp"
#include "plateau/parallel.hpp"
#include "plateau/random.hpp"

namespace plateau {

std::string to_string(Scheme s) { return s == Scheme::Rpqc ? "RPQC" : "MatrixFlow"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "RPQC" || s == "rpqc") return Scheme::Rpqc;
  if (s == "MatrixFlow" || s == "matrix-flow" || s == "matrixflow") return Scheme::MatrixFlow;
  throw UsageError("unknown scheme '" + s + "'");
}

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sample");
  return tree_sum(xs) / double(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance needs at least two samples");
  const double m = sample_mean(xs);
  const double ss = tree_sum<double>(0, xs.size(), [&](std::size_t i) {
    const double d = xs[i] - m;
    return d * d;
  });
  return ss / double(xs.size() - 1);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  const double h = double(sorted.size() - 1) * q;
  const std::size_t lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - double(lo)) * (sorted[hi] - sorted[lo]);
}

SampleStats summarize(const std::vector<double>& xs, std::uint64_t seed, std::uint64_t domain, int workers,
                      BootstrapOptions opts) {
  if (opts.resamples < 2) throw std::invalid_argument("bootstrap needs at least two resamples");
  if (!(opts.level > 0.0 && opts.level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  SampleStats st;
  st.samples = xs.size();
  st.mean = sample_mean(xs);
  st.var = sample_variance(xs);
  st.mean_stderr = std::sqrt(st.var / double(xs.size()));

  const std::size_t n = xs.size();
  std::vector<double> boot = parallel_map<double>(opts.resamples, workers, [&](std::size_t b) {
    RngStream rng(seed, b, domain);
    std::vector<double> r(n);
    for (auto& v : r) v = xs[std::size_t(rng.below(n))];
    return sample_variance(r);
  });
  std::sort(boot.begin(), boot.end());
  const double tail = (1.0 - opts.level) / 2.0;
  st.var_ci_lo = std::min(quantile_sorted(boot, tail), st.var);
  st.var_ci_hi = std::max(quantile_sorted(boot, 1.0 - tail), st.var);
  return st;
}

std::vector<double> draw_gradients(const GradientSampler& sampler, std::size_t samples, std::uint64_t seed,
                                   std::uint64_t domain, int workers) {
  return parallel_map<double>(samples, workers, [&](std::size_t i) {
    RngStream rng(seed, i, domain);
    try {
      return sampler(rng);
    } catch (const ResourceGuardError&) {
      throw;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      char where[128];
      std::snprintf(where, sizeof where, "sample %zu (seed %" PRIu64 ", domain 0x%" PRIx64 "): ", i, seed, domain);
      throw SimulationError(where + std::string(e.what()));
    }
  });
}

SampleStats estimate_grad_stats(const GradientSampler& sampler, std::size_t samples, std::uint64_t seed,
                                std::uint64_t domain, int workers) {
  if (samples < 100) throw UsageError("samples must be at least 100");
  const auto xs = draw_gradients(sampler, samples, seed, domain, workers);
  return summarize(xs, seed, domain::kBootstrap | (domain & ~std::uint64_t(0xffff)), workers);
}

void validate_cell(const CellConfig& cell) {
  if (cell.n < 1) throw UsageError("n must be at least 1");
  if (cell.samples < 100) throw UsageError("samples must be at least 100");
  if (cell.training_pairs < 1) throw UsageError("training-pairs must be at least 1");
  if (cell.scheme == Scheme::MatrixFlow && cell.family != Family::GlobalDeep) {
    throw UsageError("scheme MatrixFlow is only defined for family global-deep");
  }
  if (cell.family == Family::LocalM2Brick) {
    if (cell.n < 2 || cell.n % 2 != 0) throw UsageError("family local-m2 needs an even n >= 2");
    if (cell.layers < 0) throw UsageError("layers must be positive");
  } else if (cell.layers != 0) {
    throw UsageError("layers only applies to family local-m2");
  }
  if (cell.via_hea && cell.family != Family::LocalM2Brick) {
    throw UsageError("the hardware-efficient path only applies to family local-m2");
  }
  if (2 * cell.n > 14) {
    throw ResourceGuardError("n = " + std::to_string(cell.n) + " needs a " + std::to_string(2 * cell.n) +
                             "-qubit register; the limit is 14");
  }
}

std::uint64_t cell_domain(const CellConfig& cell) {
  return domain::kSample | (std::uint64_t(cell.n) << 16) | (std::uint64_t(cell.family) + 1) << 32 |
         (std::uint64_t(cell.cost) + 1) << 40 | (std::uint64_t(cell.scheme) + 1) << 48;
}

namespace {

const PauliString& rotation_generator(const Perceptron& p, int gate_index) {
  const auto& circ = std::get<RpqcCircuit>(p.source);
  return std::get<RotationGate>(circ.gates[std::size_t(gate_index)]).generator;
}

CostSpec sample_pairs(const CellConfig& cell, int n_in, int n_out, RngStream& rng, InputKind kind) {
  CostSpec cs{cell.cost, {}};
  for (int k = 0; k < cell.training_pairs; ++k) cs.pairs.push_back(sample_product_training_pair(n_in, n_out, rng, kind));
  return cs;
}

double random_angle(RngStream& rng) { return 2.0 * std::numbers::pi * rng.uniform(); }

}  // namespace

double sample_gradient(const CellConfig& cell, RngStream& rng) {
  const int n = cell.n;
  switch (cell.family) {
    case Family::LocalM1Toy: {
      NetworkSpec spec = sample_toy_network(n, rng);
      CostSpec cs = sample_pairs(cell, n, n, rng, InputKind::ComputationalBasis);
      return grad_theta_shift(spec, cs, {1, 1, 1, PauliString("IY")});
    }
    case Family::GlobalDeep: {
      if (cell.scheme == Scheme::MatrixFlow) {
        NetworkSpec spec = sample_global_deep_unitaries(n, rng);
        MatrixFlowState flow = sample_flow_generators(spec, rng);
        CostSpec cs = sample_pairs(cell, n, n, rng, InputKind::HaarProduct);
        return grad_s(flow, spec, cs);
      }
      NetworkSpec spec = sample_global_deep_haar(n, rng, random_angle(rng));
      CostSpec cs = sample_pairs(cell, n, n, rng, InputKind::HaarProduct);
      RpqcParameterRef ref{1, 1, 1, rotation_generator(spec.perceptron(1, 1), 1)};
      return grad_theta_shift(spec, cs, ref);
    }
    case Family::LocalM2Brick: {
      const int layers = cell.layers > 0 ? cell.layers : n;
      NetworkSpec spec = sample_brick_network(n, layers, rng, random_angle(rng));
      CostSpec cs = sample_pairs(cell, n, n, rng, InputKind::HaarProduct);
      RpqcParameterRef ref{1, 1, 1, rotation_generator(spec.perceptron(1, 1), 1)};
      if (!cell.via_hea) return grad_theta_shift(spec, cs, ref);
      const double theta = parameter_value(spec, ref);
      const double half_pi = std::numbers::pi / 2.0;
      const double plus = hea_cost(map_to_hardware_efficient(with_parameter(spec, ref, theta + half_pi)), cs);
      const double minus = hea_cost(map_to_hardware_efficient(with_parameter(spec, ref, theta - half_pi)), cs);
      return (plus - minus) / 2.0;
    }
  }
  throw UsageError("unknown family");
}

double toy_model_exact(int n, CostKind kind) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (kind == CostKind::Global) return 0.125 * std::pow(0.375, n - 1);
  return 1.0 / (8.0 * double(n) * double(n));
}

namespace {

// 2^(2n+2) - 1
double d4(int n) { return std::ldexp(1.0, 2 * n + 2) - 1.0; }

double product_factor(int n) { return std::ldexp(1.0, n) * (std::ldexp(1.0, n) + 0.5) / d4(n); }

void check_bound_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > 250) throw std::invalid_argument("n too large for double-precision bound evaluation");
}

}  // namespace

double bound_rpqc(int n, CostKind kind) {
  check_bound_n(n);
  const double den = d4(n) * d4(n);
  if (kind == CostKind::Local) return std::ldexp(1.0, 3 * n + 1) / den;
  return std::ldexp(1.0, 4 * n + 1) / den * std::pow(product_factor(n), n - 1);
}

double bound_matrix_flow_term(int n) {
  check_bound_n(n);
  return std::ldexp(1.0, 3 * n + 2) / d4(n) * std::pow(product_factor(n), n - 1);
}

double bound_matrix_flow(int n) { return double(n) * double(n) * bound_matrix_flow_term(n); }

std::optional<double> exact_for(const CellConfig& cell) {
  if (cell.family == Family::LocalM1Toy && cell.scheme == Scheme::Rpqc && cell.training_pairs == 1) {
    return toy_model_exact(cell.n, cell.cost);
  }
  return std::nullopt;
}

std::optional<double> bound_for(const CellConfig& cell) {
  if (cell.family != Family::GlobalDeep) return std::nullopt;
  if (cell.scheme == Scheme::Rpqc) return bound_rpqc(cell.n, cell.cost);
  return bound_matrix_flow(cell.n);
}

ReportRow run_cell(const CellConfig& cell, bool timing) {
  validate_cell(cell);
  const auto t0 = std::chrono::steady_clock::now();
  ReportRow row;
  row.n = cell.n;
  row.family = cell.family;
  row.cost = cell.cost;
  row.scheme = cell.scheme;
  row.seed = cell.seed;
  row.stats = estimate_grad_stats([&](RngStream& rng) { return sample_gradient(cell, rng); }, cell.samples,
                                  cell.seed, cell_domain(cell), cell.workers);
  row.exact_value = exact_for(cell);
  row.bound_value = bound_for(cell);
  if (timing) {
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

std::vector<CellConfig> sweep_cells(const SweepConfig& sweep) {
  if (sweep.n_min > sweep.n_max) throw UsageError("n range is empty (n_min > n_max)");
  if (sweep.costs.empty()) throw UsageError("no cost kinds selected");
  std::vector<CellConfig> cells;
  for (int n = sweep.n_min; n <= sweep.n_max; ++n) {
    for (CostKind c : sweep.costs) {
      CellConfig cell;
      cell.n = n;
      cell.family = sweep.family;
      cell.cost = c;
      cell.scheme = sweep.scheme;
      cell.samples = sweep.samples;
      cell.training_pairs = sweep.training_pairs;
      cell.seed = sweep.seed;
      cell.workers = sweep.workers;
      cell.layers = sweep.layers;
      cells.push_back(cell);
    }
  }
  return cells;
}

VarianceReport run_sweep(const SweepConfig& sweep, const std::function<void(const ReportRow&)>& on_row) {
  const auto cells = sweep_cells(sweep);
  for (const auto& c : cells) validate_cell(c);
  VarianceReport report;
  for (const auto& c : cells) {
    report.rows.push_back(run_cell(c, sweep.timing));
    if (on_row) on_row(report.rows.back());
  }
  return report;
}

const std::vector<std::string> kCsvColumns = {
    "n",        "family",    "cost_kind", "scheme",      "samples",     "grad_mean", "grad_mean_stderr",
    "grad_var", "var_ci_lo", "var_ci_hi", "exact_value", "bound_value", "seed",      "wall_time_ms"};

namespace {

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string opt(const std::optional<double>& x) { return x ? real(*x) : std::string(); }

}  // namespace

std::string csv_header(const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out += (i ? "," : "") + kCsvColumns[i];
  return out + "\n";
}

std::string csv_row(const ReportRow& r) {
  std::string out = std::to_string(r.n) + "," + to_string(r.family) + "," + to_string(r.cost) + "," +
                    to_string(r.scheme) + "," + std::to_string(r.stats.samples) + "," + real(r.stats.mean) + "," +
                    real(r.stats.mean_stderr) + "," + real(r.stats.var) + "," + real(r.stats.var_ci_lo) + "," +
                    real(r.stats.var_ci_hi) + "," + opt(r.exact_value) + "," + opt(r.bound_value) + "," +
                    std::to_string(r.seed) + "," + opt(r.wall_time_ms);
  return out + "\n";
}

std::string to_csv(const VarianceReport& report, const std::vector<std::string>& comments) {
  std::string out = csv_header(comments);
  for (const auto& r : report.rows) out += csv_row(r);
  return out;
}

}  // namespace plateau
