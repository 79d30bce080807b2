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

#include "plateau/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "plateau/errors.hpp"

namespace plateau {

ComplexMatrix rotation_matrix(const PauliString& generator, double angle) {
  const Eigen::Index d = Eigen::Index(1) << generator.num_qubits();
  ComplexMatrix r = ComplexMatrix::Identity(d, d) * std::cos(angle / 2);
  ComplexMatrix p = generator.matrix();
  r -= Complex(0.0, std::sin(angle / 2)) * p;
  return r;
}

ComplexMatrix RpqcCircuit::materialize(int num_local_qubits) const {
  const Eigen::Index d = Eigen::Index(1) << num_local_qubits;
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (const auto& gate : gates) {
    if (const auto* fixed = std::get_if<FixedGate>(&gate)) {
      for (Eigen::Index c = 0; c < d; ++c) {
        apply_matrix_inplace(u.data() + c * d, num_local_qubits, fixed->matrix, fixed->qubits);
      }
    } else {
      const auto& rot = std::get<RotationGate>(gate);
      if (rot.generator.num_qubits() != num_local_qubits) {
        throw std::invalid_argument("rotation generator width does not match perceptron");
      }
      u = rotation_matrix(rot.generator, rot.angle) * u;
    }
  }
  return u;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::GlobalDeep: return "global-deep";
    case Family::LocalM1Toy: return "local-m1";
    case Family::LocalM2Brick: return "local-m2";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "global-deep") return Family::GlobalDeep;
  if (s == "local-m1") return Family::LocalM1Toy;
  if (s == "local-m2") return Family::LocalM2Brick;
  throw UsageError("unknown family '" + s + "'");
}

std::string to_string(CostKind k) { return k == CostKind::Global ? "global" : "local"; }

CostKind cost_kind_from_string(const std::string& s) {
  if (s == "global") return CostKind::Global;
  if (s == "local") return CostKind::Local;
  throw UsageError("unknown cost kind '" + s + "'");
}

ComplexMatrix Perceptron::unitary() const {
  if (const auto* m = std::get_if<ComplexMatrix>(&source)) return *m;
  return std::get<RpqcCircuit>(source).materialize(num_qubits());
}

int NetworkSpec::total_qubits() const {
  int t = 0;
  for (int w : layer_widths) t += w;
  return t;
}

int NetworkSpec::layer_offset(int l) const {
  int t = 0;
  for (int i = 0; i < l; ++i) t += layer_widths[std::size_t(i)];
  return t;
}

Perceptron& NetworkSpec::perceptron(int layer, int index) {
  for (auto& p : perceptrons) {
    if (p.layer == layer && p.index == index) return p;
  }
  throw std::out_of_range("no perceptron (" + std::to_string(layer) + ", " + std::to_string(index) + ")");
}

const Perceptron& NetworkSpec::perceptron(int layer, int index) const {
  return const_cast<NetworkSpec*>(this)->perceptron(layer, index);
}

void NetworkSpec::validate() const {
  if (layer_widths.size() < 2) throw std::invalid_argument("network needs at least two layers");
  for (int w : layer_widths) {
    if (w < 1) throw std::invalid_argument("layer widths must be >= 1");
  }
  std::vector<std::vector<int>> covered(layer_widths.size());
  for (std::size_t l = 0; l < layer_widths.size(); ++l) covered[l].assign(std::size_t(layer_widths[l]), 0);
  int last_layer = 1;
  for (const auto& p : perceptrons) {
    const std::string where = "perceptron (" + std::to_string(p.layer) + ", " + std::to_string(p.index) + ")";
    if (p.layer < 1 || p.layer > num_layers()) throw std::invalid_argument(where + ": bad layer");
    if (p.layer < last_layer) throw std::invalid_argument(where + ": layers out of order");
    last_layer = p.layer;
    const int prev = layer_widths[std::size_t(p.layer - 1)];
    const int next = layer_widths[std::size_t(p.layer)];
    if (p.inputs.empty()) throw std::invalid_argument(where + ": no inputs");
    std::vector<int> sorted = p.inputs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= prev) {
      throw std::invalid_argument(where + ": bad input qubits");
    }
    if (p.output < 0 || p.output >= next) throw std::invalid_argument(where + ": bad output qubit");
    covered[std::size_t(p.layer)][std::size_t(p.output)] += 1;
    if (const auto* m = std::get_if<ComplexMatrix>(&p.source)) {
      const Eigen::Index d = Eigen::Index(1) << p.num_qubits();
      if (m->rows() != d || m->cols() != d) throw std::invalid_argument(where + ": unitary size mismatch");
    }
  }
  for (std::size_t l = 1; l < covered.size(); ++l) {
    for (std::size_t q = 0; q < covered[l].size(); ++q) {
      if (covered[l][q] != 1) {
        throw std::invalid_argument("output qubit " + std::to_string(q) + " of layer " + std::to_string(l) +
                                    " is not the target of exactly one perceptron");
      }
    }
  }
}

ComplexMatrix global_observable(const TrainingPair& pair) {
  const auto& phi = pair.output_state();
  return ComplexMatrix::Identity(phi.size(), phi.size()) - phi * phi.adjoint();
}

ComplexMatrix local_observable(const TrainingPair& pair) {
  if (!pair.is_product()) throw std::invalid_argument("local cost needs a product output state");
  const int n = pair.n_out();
  const Eigen::Index d = Eigen::Index(1) << n;
  ComplexMatrix o = ComplexMatrix::Identity(d, d);
  for (int j = 0; j < n; ++j) {
    const auto& psi = pair.output_factors()[std::size_t(j)];
    o -= embed(psi * psi.adjoint(), n, {j}) / double(n);
  }
  return o;
}

ComplexMatrix CostSpec::observable(const TrainingPair& pair) const {
  return kind == CostKind::Global ? global_observable(pair) : local_observable(pair);
}

QuantumState forward(const NetworkSpec& spec, const QuantumState& rho_in) {
  if (rho_in.num_qubits() != spec.n_in()) {
    throw std::invalid_argument("input state has " + std::to_string(rho_in.num_qubits()) +
                                " qubits, network expects " + std::to_string(spec.n_in()));
  }
  QuantumState state = rho_in;
  std::size_t next_perceptron = 0;
  for (int l = 1; l <= spec.num_layers(); ++l) {
    const int prev = spec.layer_widths[std::size_t(l - 1)];
    const int next = spec.layer_widths[std::size_t(l)];
    state = kron(QuantumState::basis(next, 0), state);
    const int width = prev + next;
    ComplexVector psi;
    ComplexMatrix rho;
    if (state.is_pure()) psi = state.vector(); else rho = state.density();
    while (next_perceptron < spec.perceptrons.size() && spec.perceptrons[next_perceptron].layer == l) {
      const auto& p = spec.perceptrons[next_perceptron++];
      std::vector<int> targets = p.inputs;
      targets.push_back(prev + p.output);
      const ComplexMatrix u = p.unitary();
      if (validation_enabled() && !is_unitary(u)) {
        throw SimulationError("perceptron (" + std::to_string(p.layer) + ", " + std::to_string(p.index) +
                              ") is not unitary");
      }
      if (state.is_pure()) apply_matrix_inplace(psi, width, u, targets);
      else conjugate_inplace(rho, width, u, targets);
    }
    QuantumState evolved = state.is_pure() ? QuantumState::pure(std::move(psi)) : QuantumState::mixed(std::move(rho));
    std::vector<int> keep(std::size_t(next), 0);
    for (int q = 0; q < next; ++q) keep[std::size_t(q)] = prev + q;
    state = partial_trace(evolved, keep);
  }
  return state;
}

double cost(const NetworkSpec& spec, const CostSpec& cspec) {
  if (cspec.pairs.empty()) throw std::invalid_argument("cost needs at least one training pair");
  double total = 0.0;
  for (const auto& pair : cspec.pairs) {
    if (pair.n_in() != spec.n_in() || pair.n_out() != spec.n_out()) {
      throw std::invalid_argument("training pair widths do not match the network");
    }
    total += expectation(forward(spec, pair.input()), cspec.observable(pair));
  }
  const double c = total / double(cspec.pairs.size());
  if (c < -1e-9 || c > 1.0 + 1e-9) throw SimulationError("cost " + std::to_string(c) + " outside [0, 1]");
  return c;
}

NetworkSpec swap_network(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  NetworkSpec spec;
  spec.layer_widths = {n, n};
  spec.family = Family::LocalM1Toy;
  for (int j = 0; j < n; ++j) spec.perceptrons.push_back({1, j + 1, {j}, j, swap_matrix()});
  return spec;
}

NetworkSpec toy_network(const std::vector<double>& angles) {
  const int n = int(angles.size());
  if (n < 1) throw std::invalid_argument("toy network needs at least one angle");
  NetworkSpec spec;
  spec.layer_widths = {n, n};
  spec.family = Family::LocalM1Toy;
  for (int j = 0; j < n; ++j) {
    RpqcCircuit c;
    c.gates.push_back(FixedGate{swap_matrix(), {0, 1}});
    c.gates.push_back(RotationGate{PauliString("IY"), angles[std::size_t(j)]});
    spec.perceptrons.push_back({1, j + 1, {j}, j, std::move(c)});
  }
  return spec;
}

NetworkSpec sample_toy_network(int n, RngStream& rng) {
  std::vector<double> angles(std::size_t(n), 0.0);
  for (auto& a : angles) a = 2 * std::numbers::pi * rng.uniform();
  return toy_network(angles);
}

namespace {

std::vector<int> all_inputs(int n) {
  std::vector<int> v(std::size_t(n), 0);
  for (int i = 0; i < n; ++i) v[std::size_t(i)] = i;
  return v;
}

std::vector<int> all_local(int count) { return all_inputs(count); }

}  // namespace

NetworkSpec sample_global_deep_circuit(int n, RngStream& rng, int eta) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int local = n + 1;
  if (eta <= 0) eta = 4 * local * local;
  NetworkSpec spec;
  spec.layer_widths = {n, n};
  spec.family = Family::GlobalDeep;
  static constexpr char kAxes[3] = {'X', 'Y', 'Z'};
  for (int j = 0; j < n; ++j) {
    RpqcCircuit c;
    for (int k = 0; k < eta; ++k) {
      const int a = k % local;
      const int b = (k + 1) % local;
      c.gates.push_back(FixedGate{sample_haar_unitary(2, rng), {a, b}});
      std::string label(std::size_t(local), 'I');
      label[std::size_t(rng.below(std::uint64_t(local)))] = kAxes[rng.below(3)];
      c.gates.push_back(RotationGate{PauliString(label), 2 * std::numbers::pi * rng.uniform()});
    }
    spec.perceptrons.push_back({1, j + 1, all_inputs(n), j, std::move(c)});
  }
  return spec;
}

NetworkSpec sample_global_deep_haar(int n, RngStream& rng, double theta) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int local = n + 1;
  NetworkSpec spec;
  spec.layer_widths = {n, n};
  spec.family = Family::GlobalDeep;
  RpqcCircuit first;
  ComplexMatrix a = sample_haar_unitary(local, rng);
  PauliString gamma = sample_nonidentity_pauli(local, rng);
  ComplexMatrix b = sample_haar_unitary(local, rng);
  first.gates.push_back(FixedGate{std::move(a), all_local(local)});
  first.gates.push_back(RotationGate{std::move(gamma), theta});
  first.gates.push_back(FixedGate{std::move(b), all_local(local)});
  spec.perceptrons.push_back({1, 1, all_inputs(n), 0, std::move(first)});
  for (int j = 1; j < n; ++j) {
    spec.perceptrons.push_back({1, j + 1, all_inputs(n), j, sample_haar_unitary(local, rng)});
  }
  return spec;
}

NetworkSpec sample_global_deep_unitaries(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  NetworkSpec spec;
  spec.layer_widths = {n, n};
  spec.family = Family::GlobalDeep;
  for (int j = 0; j < n; ++j) {
    spec.perceptrons.push_back({1, j + 1, all_inputs(n), j, sample_haar_unitary(n + 1, rng)});
  }
  return spec;
}

std::vector<std::pair<int, int>> brick_pairs(int n, int layer) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = (layer % 2 == 1) ? 0 : 1; a + 1 < n; a += 2) pairs.emplace_back(a, a + 1);
  return pairs;
}

NetworkSpec brick_network(int n, int layers, const std::vector<std::vector<RpqcCircuit>>& blocks) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("brick network needs an even width >= 2");
  if (layers < 1) throw std::invalid_argument("brick network needs at least one layer");
  if (int(blocks.size()) != layers) throw std::invalid_argument("need one block list per layer");
  NetworkSpec spec;
  spec.layer_widths.assign(std::size_t(layers + 1), n);
  spec.family = Family::LocalM2Brick;
  const ComplexMatrix swap_out_b = embed(swap_matrix(), 3, {1, 2});
  for (int l = 1; l <= layers; ++l) {
    const auto pairs = brick_pairs(n, l);
    const auto& w = blocks[std::size_t(l - 1)];
    if (w.size() != pairs.size()) throw std::invalid_argument("block count does not match brick pairs");
    std::vector<bool> paired(std::size_t(n), false);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [a, b] = pairs[i];
      paired[std::size_t(a)] = paired[std::size_t(b)] = true;
      RpqcCircuit c;
      for (const auto& g : w[i].gates) {
        if (const auto* fixed = std::get_if<FixedGate>(&g)) {
          c.gates.push_back(*fixed);
        } else {
          const auto& rot = std::get<RotationGate>(g);
          if (rot.generator.num_qubits() != 2) throw std::invalid_argument("W rotations must act on two qubits");
          c.gates.push_back(RotationGate{PauliString(rot.generator.label() + "I"), rot.angle});
        }
      }
      c.gates.push_back(FixedGate{swap_matrix(), {0, 2}});
      spec.perceptrons.push_back({l, a + 1, {a, b}, a, std::move(c)});
    }
    for (int q = 0; q < n; ++q) {
      if (!paired[std::size_t(q)]) spec.perceptrons.push_back({l, q + 1, {q}, q, swap_matrix()});
    }
    for (const auto& [a, b] : pairs) spec.perceptrons.push_back({l, b + 1, {a, b}, b, swap_out_b});
  }
  return spec;
}

NetworkSpec sample_brick_network(int n, int layers, RngStream& rng, double theta) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("brick network needs an even width >= 2");
  std::vector<std::vector<RpqcCircuit>> blocks(std::size_t(std::max(layers, 0)));
  for (int l = 1; l <= layers; ++l) {
    for (std::size_t i = 0; i < brick_pairs(n, l).size(); ++i) {
      RpqcCircuit w;
      ComplexMatrix a = sample_haar_unitary(2, rng);
      PauliString gamma = sample_nonidentity_pauli(2, rng);
      ComplexMatrix b = sample_haar_unitary(2, rng);
      w.gates.push_back(FixedGate{std::move(a), {0, 1}});
      w.gates.push_back(RotationGate{std::move(gamma), theta});
      w.gates.push_back(FixedGate{std::move(b), {0, 1}});
      blocks[std::size_t(l - 1)].push_back(std::move(w));
    }
  }
  return brick_network(n, layers, blocks);
}

HardwareEfficientCircuit map_to_hardware_efficient(const NetworkSpec& spec) {
  if (spec.family != Family::LocalM2Brick) {
    throw std::invalid_argument("hardware-efficient mapping needs a local-m2 network");
  }
  spec.validate();
  const int n = spec.n_in();
  for (int w : spec.layer_widths) {
    if (w != n) throw std::invalid_argument("brick layers must all have the same width");
  }
  HardwareEfficientCircuit out;
  out.num_qubits = n;
  out.num_sublayers = spec.num_layers();
  out.num_layers = (spec.num_layers() + 1) / 2;

  const ComplexMatrix swap02 = embed(swap_matrix(), 3, {0, 2});
  const ComplexMatrix swap12 = embed(swap_matrix(), 3, {1, 2});
  const double tol = 1e-12;
  for (const auto& p : spec.perceptrons) {
    const ComplexMatrix u = p.unitary();
    if (p.inputs.size() == 1) {
      if (p.output != p.inputs[0] || max_abs(u - swap_matrix()) > tol) {
        throw std::invalid_argument("single-input brick perceptron must be a plain SWAP");
      }
      continue;
    }
    if (p.inputs.size() != 2) throw std::invalid_argument("brick perceptrons take one or two inputs");
    const int a = p.inputs[0];
    const int b = p.inputs[1];
    if (p.output == b) {
      if (max_abs(u - swap12) > tol) throw std::invalid_argument("second pair perceptron must be a SWAP");
      continue;
    }
    if (p.output != a) throw std::invalid_argument("pair perceptron output must sit under one of its inputs");
    // u = SWAP_{0,2} (1 (x) W), and the output qubit is the high bit.
    const ComplexMatrix lifted = swap02 * u;
    if (max_abs(lifted.topRightCorner(4, 4)) > tol || max_abs(lifted.bottomLeftCorner(4, 4)) > tol ||
        max_abs(lifted.topLeftCorner(4, 4) - lifted.bottomRightCorner(4, 4)) > tol) {
      throw std::invalid_argument("pair perceptron is not W followed by a SWAP");
    }
    out.blocks.push_back({lifted.topLeftCorner(4, 4), {a, b}});
  }
  return out;
}

double hea_cost(const HardwareEfficientCircuit& circuit, const CostSpec& cspec) {
  if (cspec.pairs.empty()) throw std::invalid_argument("cost needs at least one training pair");
  double total = 0.0;
  for (const auto& pair : cspec.pairs) {
    if (pair.n_in() != circuit.num_qubits || pair.n_out() != circuit.num_qubits) {
      throw std::invalid_argument("training pair widths do not match the circuit");
    }
    ComplexVector psi = pair.input().vector();
    for (const auto& block : circuit.blocks) {
      apply_matrix_inplace(psi, circuit.num_qubits, block.matrix, {block.qubits.first, block.qubits.second});
    }
    total += expectation(QuantumState::pure(std::move(psi)), cspec.observable(pair));
  }
  const double c = total / double(cspec.pairs.size());
  if (c < -1e-9 || c > 1.0 + 1e-9) throw SimulationError("cost " + std::to_string(c) + " outside [0, 1]");
  return c;
}

}  // namespace plateau
