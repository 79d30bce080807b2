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

#include <vector>

#include "plateau/check.hpp"
#include "plateau/network.hpp"

namespace plateau {

// Angle of rotation gate `gate_index` inside the circuit of perceptron
// (layer, index). `generator` must match the gate's generator.
struct RpqcParameterRef {
  int layer = 1;
  int index = 1;
  int gate_index = 0;
  PauliString generator;
};

double parameter_value(const NetworkSpec& spec, const RpqcParameterRef& pref);
NetworkSpec with_parameter(const NetworkSpec& spec, const RpqcParameterRef& pref, double angle);

// [C(theta + pi/2) - C(theta - pi/2)] / 2 for R = exp(-i theta/2 Gamma).
double grad_theta_shift(const NetworkSpec& spec, const CostSpec& cspec, const RpqcParameterRef& pref);
// [C(theta + h) - C(theta - h)] / (2h).
double grad_theta_fd(const NetworkSpec& spec, const CostSpec& cspec, const RpqcParameterRef& pref, double step);

// One unitary and one generator per perceptron, in spec.perceptrons order.
struct MatrixFlowState {
  std::vector<ComplexMatrix> unitaries;
  std::vector<ComplexMatrix> generators;
  double step = 0.0;
};

// Unitaries taken from the network, generators supplied by the caller.
MatrixFlowState make_flow(const NetworkSpec& spec, std::vector<ComplexMatrix> generators);
// Generators sampled in the Pauli basis with Tr[H^2] = 2^(m+1) for each
// perceptron on m+1 qubits.
MatrixFlowState sample_flow_generators(const NetworkSpec& spec, RngStream& rng);

// The network with every perceptron replaced by the flow's current unitary.
NetworkSpec apply_flow(const NetworkSpec& spec, const MatrixFlowState& flow);

enum class GradSMethod { StateVector, DensityMatrix };

// dC/ds for V -> exp(i s H) V on every perceptron at once, evaluated on the
// full register of all layers.
double grad_s(const MatrixFlowState& flow, const NetworkSpec& spec, const CostSpec& cspec,
              GradSMethod method = GradSMethod::StateVector);

// Every unitary left-multiplied by exp(i epsilon H); s advanced by epsilon.
MatrixFlowState update_step(const MatrixFlowState& flow, double epsilon);

// Random consistency checks. Parameter shift against central differences
// with step h on `shift_instances` networks drawn from all three families
// (tolerance max(1e-6, 10 h^2)); dC/ds against forward differences at
// eps = 1e-3 and 1e-4 on `flow_instances` global networks, where the error
// ratio must lie in [5, 20] (first order) unless both errors are <= 1e-9.
std::vector<CheckResult> run_gradient_suite(std::uint64_t seed, int shift_instances = 50, int flow_instances = 20,
                                            double h = 1e-4);

}  // namespace plateau
