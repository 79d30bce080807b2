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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <variant>

#include "plateau/gradient.hpp"
#include "plateau/random.hpp"

namespace plateau {

namespace {

constexpr std::uint64_t kShiftDomain = 0x5100;
constexpr std::uint64_t kFlowDomain = 0x5200;

struct Instance {
  NetworkSpec spec;
  RpqcParameterRef ref;
};

const PauliString& generator_at(const NetworkSpec& spec, int layer, int index, int gate) {
  const auto& circ = std::get<RpqcCircuit>(spec.perceptron(layer, index).source);
  return std::get<RotationGate>(circ.gates[std::size_t(gate)]).generator;
}

Instance random_instance(Family family, RngStream& rng) {
  switch (family) {
    case Family::LocalM1Toy: {
      const int n = 1 + int(rng.below(3));
      NetworkSpec spec = sample_toy_network(n, rng);
      return {spec, {1, 1 + int(rng.below(std::uint64_t(n))), 1, PauliString("IY")}};
    }
    case Family::GlobalDeep: {
      const int n = 1 + int(rng.below(2));
      NetworkSpec spec = sample_global_deep_circuit(n, rng, 6);
      const int j = 1 + int(rng.below(std::uint64_t(n)));
      const int k = 2 * int(rng.below(6)) + 1;
      return {spec, {1, j, k, generator_at(spec, 1, j, k)}};
    }
    case Family::LocalM2Brick: {
      const int n = 2 * (1 + int(rng.below(2)));
      NetworkSpec spec = sample_brick_network(n, 2, rng, 2 * std::numbers::pi * rng.uniform());
      return {spec, {1, 1, 1, generator_at(spec, 1, 1, 1)}};
    }
  }
  throw std::invalid_argument("unknown family");
}

NetworkSpec random_global(const std::vector<int>& widths, RngStream& rng) {
  NetworkSpec spec;
  spec.layer_widths = widths;
  spec.family = Family::GlobalDeep;
  for (int l = 1; l < int(widths.size()); ++l) {
    std::vector<int> in;
    for (int q = 0; q < widths[std::size_t(l - 1)]; ++q) in.push_back(q);
    for (int j = 0; j < widths[std::size_t(l)]; ++j) {
      spec.perceptrons.push_back({l, j + 1, in, j, sample_haar_unitary(int(in.size()) + 1, rng)});
    }
  }
  return spec;
}

std::string describe(const char* fmt, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_gradient_suite(std::uint64_t seed, int shift_instances, int flow_instances, double h) {
  if (shift_instances < 1 || flow_instances < 1) throw std::invalid_argument("need at least one instance per check");
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  std::vector<CheckResult> out;

  const Family families[3] = {Family::LocalM1Toy, Family::GlobalDeep, Family::LocalM2Brick};
  CheckResult shift{"parameter-shift-vs-central-fd", 0.0, std::max(1e-6, 10 * h * h), true, ""};
  int failures = 0;
  for (int i = 0; i < shift_instances; ++i) {
    RngStream rng(seed, std::uint64_t(i), kShiftDomain);
    Instance inst = random_instance(families[i % 3], rng);
    CostSpec cs{rng.below(2) ? CostKind::Global : CostKind::Local,
                {sample_product_training_pair(inst.spec.n_in(), inst.spec.n_out(), rng)}};
    const double dev = std::abs(grad_theta_shift(inst.spec, cs, inst.ref) - grad_theta_fd(inst.spec, cs, inst.ref, h));
    shift.deviation = std::max(shift.deviation, dev);
    if (dev > shift.tolerance) ++failures;
  }
  shift.passed = failures == 0;
  shift.detail = describe("%.0f instances, h = %.0e, %.0f over tolerance", shift_instances, h, failures);
  out.push_back(shift);

  // deviation: max(5 / ratio, ratio / 20), at most 1 inside [5, 20]
  CheckResult flow{"grad-s-vs-forward-fd-first-order", 0.0, 1.0, true, ""};
  const std::vector<std::vector<int>> shapes = {{1, 1}, {2, 2}, {3, 3}, {2, 1, 2}};
  int exact = 0;
  failures = 0;
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < flow_instances; ++i) {
    RngStream rng(seed, std::uint64_t(i), kFlowDomain);
    NetworkSpec spec = random_global(shapes[std::size_t(i) % shapes.size()], rng);
    MatrixFlowState state = sample_flow_generators(spec, rng);
    CostSpec cs{i % 2 ? CostKind::Global : CostKind::Local,
                {sample_product_training_pair(spec.n_in(), spec.n_out(), rng)}};
    const double g = grad_s(state, spec, cs);
    const double c0 = cost(apply_flow(spec, state), cs);
    const double eps[2] = {1e-3, 1e-4};
    double err[2];
    for (int e = 0; e < 2; ++e) {
      err[e] = std::abs((cost(apply_flow(spec, update_step(state, eps[e])), cs) - c0) / eps[e] - g);
    }
    if (err[0] <= 1e-9 && err[1] <= 1e-9) {
      ++exact;
      continue;
    }
    const double ratio = err[0] / err[1];
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    flow.deviation = std::max({flow.deviation, 5.0 / ratio, ratio / 20.0});
    if (!(ratio >= 5.0 && ratio <= 20.0)) ++failures;
  }
  flow.passed = failures == 0;
  flow.detail = describe("error ratio in [%.3g, %.3g]; %.0f instances exact to 1e-9", exact == flow_instances ? 0 : lo,
                         hi, exact) +
                (failures ? "; " + std::to_string(failures) + " outside [5, 20]" : "");
  out.push_back(flow);
  return out;
}

}  // namespace plateau
