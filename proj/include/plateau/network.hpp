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

#include <string>
#include <variant>
#include <vector>

#include "plateau/linalg.hpp"
#include "plateau/random.hpp"
#include "plateau/training.hpp"

namespace plateau {

// Gate qubits are perceptron-local: inputs are 0..m-1, the output is m.
struct FixedGate {
  ComplexMatrix matrix;
  std::vector<int> qubits;
};

// exp(-i angle/2 * generator), generator over all m+1 local qubits.
struct RotationGate {
  PauliString generator;
  double angle = 0.0;
};

using RpqcGate = std::variant<FixedGate, RotationGate>;

// Gates act in list order (gates[0] first).
struct RpqcCircuit {
  std::vector<RpqcGate> gates;

  ComplexMatrix materialize(int num_local_qubits) const;
};

ComplexMatrix rotation_matrix(const PauliString& generator, double angle);

enum class Family { GlobalDeep, LocalM1Toy, LocalM2Brick };

std::string to_string(Family f);
Family family_from_string(const std::string& s);  // "global-deep", "local-m1", "local-m2"

struct Perceptron {
  int layer = 1;            // l >= 1; layer 0 is the input layer
  int index = 1;            // j >= 1 within the layer
  std::vector<int> inputs;  // qubits of layer l-1 (0-based)
  int output = 0;           // qubit of layer l (0-based)
  std::variant<ComplexMatrix, RpqcCircuit> source;

  int num_qubits() const { return int(inputs.size()) + 1; }
  ComplexMatrix unitary() const;
};

struct NetworkSpec {
  std::vector<int> layer_widths;       // n_0 = n_in, ..., n_L = n_out
  std::vector<Perceptron> perceptrons;  // in application order
  Family family = Family::GlobalDeep;

  int n_in() const { return layer_widths.front(); }
  int n_out() const { return layer_widths.back(); }
  int num_layers() const { return int(layer_widths.size()) - 1; }
  int total_qubits() const;
  // Offset of layer l's first qubit in the full register.
  int layer_offset(int l) const;

  Perceptron& perceptron(int layer, int index);
  const Perceptron& perceptron(int layer, int index) const;

  // Throws std::invalid_argument on a malformed topology.
  void validate() const;
};

enum class CostKind { Global, Local };

std::string to_string(CostKind k);
CostKind cost_kind_from_string(const std::string& s);

struct CostSpec {
  CostKind kind = CostKind::Global;
  std::vector<TrainingPair> pairs;

  ComplexMatrix observable(const TrainingPair& pair) const;
};

ComplexMatrix global_observable(const TrainingPair& pair);
ComplexMatrix local_observable(const TrainingPair& pair);

// Layer-by-layer dissipative evolution on a two-layer sliding register.
QuantumState forward(const NetworkSpec& spec, const QuantumState& rho_in);

double cost(const NetworkSpec& spec, const CostSpec& cspec);

// Builders. All have no hidden layers unless `layers` says otherwise.

// Every perceptron is a plain SWAP from input j to output j.
NetworkSpec swap_network(int n);

// Toy model: SWAP then R_y(angles[j]) on output j.
NetworkSpec toy_network(const std::vector<double>& angles);
NetworkSpec sample_toy_network(int n, RngStream& rng);

// Global perceptrons as explicit circuits: eta blocks, each a Haar two-qubit
// gate on a ring neighbour pair followed by a single-qubit Pauli rotation
// with random axis, qubit and angle. eta <= 0 means 4(n+1)^2.
NetworkSpec sample_global_deep_circuit(int n, RngStream& rng, int eta = 0);

// Global perceptrons with the first one split as B R(theta) A. A, B and all
// later perceptrons are Haar on n+1 qubits; the generator is a random
// non-identity Pauli string.
NetworkSpec sample_global_deep_haar(int n, RngStream& rng, double theta = 0.0);

// Global perceptrons, each an explicit Haar unitary.
NetworkSpec sample_global_deep_unitaries(int n, RngStream& rng);

// m = 2 brick network on n qubits (n even) with `layers` perceptron layers.
// blocks[l-1] holds the two-qubit W for each pair of layer l, in pair order.
NetworkSpec brick_network(int n, int layers, const std::vector<std::vector<RpqcCircuit>>& blocks);
// Pairs of layer l (1-based), as 0-based qubit pairs (a, a+1).
std::vector<std::pair<int, int>> brick_pairs(int n, int layer);
// Haar A, B around a random Pauli rotation at theta for every W.
NetworkSpec sample_brick_network(int n, int layers, RngStream& rng, double theta = 0.0);

struct HeaBlock {
  ComplexMatrix matrix;
  std::pair<int, int> qubits;
};

struct HardwareEfficientCircuit {
  int num_qubits = 0;
  int num_layers = 0;     // brick layers: two sublayers each
  int num_sublayers = 0;  // one per DQNN layer
  std::vector<HeaBlock> blocks;  // in application order
};

HardwareEfficientCircuit map_to_hardware_efficient(const NetworkSpec& spec);
double hea_cost(const HardwareEfficientCircuit& circuit, const CostSpec& cspec);

}  // namespace plateau
