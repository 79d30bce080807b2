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

#include "plateau/gradient.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

RotationGate& rotation_at(NetworkSpec& spec, const RpqcParameterRef& pref) {
  Perceptron& p = spec.perceptron(pref.layer, pref.index);
  auto* circuit = std::get_if<RpqcCircuit>(&p.source);
  if (!circuit) throw std::invalid_argument("perceptron has no parameterized circuit");
  if (pref.gate_index < 0 || pref.gate_index >= int(circuit->gates.size())) {
    throw std::out_of_range("gate index " + std::to_string(pref.gate_index) + " out of range");
  }
  auto* rot = std::get_if<RotationGate>(&circuit->gates[std::size_t(pref.gate_index)]);
  if (!rot) throw std::invalid_argument("gate " + std::to_string(pref.gate_index) + " is not a rotation");
  if (rot->generator != pref.generator) {
    throw std::invalid_argument("generator " + pref.generator.label() + " does not match gate generator " +
                                rot->generator.label());
  }
  return *rot;
}

std::vector<int> perceptron_targets(const NetworkSpec& spec, const Perceptron& p) {
  std::vector<int> t;
  const int in_off = spec.layer_offset(p.layer - 1);
  for (int q : p.inputs) t.push_back(in_off + q);
  t.push_back(spec.layer_offset(p.layer) + p.output);
  return t;
}

void check_flow(const MatrixFlowState& flow, const NetworkSpec& spec) {
  const std::size_t count = spec.perceptrons.size();
  if (flow.unitaries.size() != count) throw std::invalid_argument("flow has the wrong number of unitaries");
  if (flow.generators.size() != count) throw std::invalid_argument("flow is missing generators");
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::Index d = Eigen::Index(1) << spec.perceptrons[i].num_qubits();
    if (flow.unitaries[i].rows() != d || flow.unitaries[i].cols() != d) {
      throw std::invalid_argument("flow unitary " + std::to_string(i) + " has the wrong size");
    }
    if (flow.generators[i].rows() != d || flow.generators[i].cols() != d) {
      throw std::invalid_argument("missing or mis-sized generator for perceptron " + std::to_string(i));
    }
  }
}

}  // namespace

double parameter_value(const NetworkSpec& spec, const RpqcParameterRef& pref) {
  NetworkSpec copy = spec;
  return rotation_at(copy, pref).angle;
}

NetworkSpec with_parameter(const NetworkSpec& spec, const RpqcParameterRef& pref, double angle) {
  NetworkSpec copy = spec;
  rotation_at(copy, pref).angle = angle;
  return copy;
}

double grad_theta_shift(const NetworkSpec& spec, const CostSpec& cspec, const RpqcParameterRef& pref) {
  const double theta = parameter_value(spec, pref);
  const double s = std::numbers::pi / 2;
  return (cost(with_parameter(spec, pref, theta + s), cspec) - cost(with_parameter(spec, pref, theta - s), cspec)) / 2;
}

double grad_theta_fd(const NetworkSpec& spec, const CostSpec& cspec, const RpqcParameterRef& pref, double step) {
  if (!(step > 0)) throw std::invalid_argument("finite-difference step must be positive");
  const double theta = parameter_value(spec, pref);
  return (cost(with_parameter(spec, pref, theta + step), cspec) - cost(with_parameter(spec, pref, theta - step), cspec)) /
         (2 * step);
}

MatrixFlowState make_flow(const NetworkSpec& spec, std::vector<ComplexMatrix> generators) {
  MatrixFlowState flow;
  for (const auto& p : spec.perceptrons) flow.unitaries.push_back(p.unitary());
  flow.generators = std::move(generators);
  check_flow(flow, spec);
  return flow;
}

MatrixFlowState sample_flow_generators(const NetworkSpec& spec, RngStream& rng) {
  std::vector<ComplexMatrix> gens;
  for (const auto& p : spec.perceptrons) {
    const int k = p.num_qubits();
    gens.push_back(sample_pauli_hermitian(k, std::ldexp(1.0, k), rng));
  }
  return make_flow(spec, std::move(gens));
}

NetworkSpec apply_flow(const NetworkSpec& spec, const MatrixFlowState& flow) {
  check_flow(flow, spec);
  NetworkSpec out = spec;
  for (std::size_t i = 0; i < out.perceptrons.size(); ++i) out.perceptrons[i].source = flow.unitaries[i];
  return out;
}

double grad_s(const MatrixFlowState& flow, const NetworkSpec& spec, const CostSpec& cspec, GradSMethod method) {
  check_flow(flow, spec);
  if (cspec.pairs.empty()) throw std::invalid_argument("grad_s needs at least one training pair");
  const int total = spec.total_qubits();
  if (total > 14) throw ResourceGuardError("full register of " + std::to_string(total) + " qubits exceeds 14");
  const Eigen::Index d = Eigen::Index(1) << total;
  const std::size_t count = spec.perceptrons.size();

  std::vector<std::vector<int>> targets;
  for (const auto& p : spec.perceptrons) targets.push_back(perceptron_targets(spec, p));
  std::vector<int> out_targets;
  const int out_off = spec.layer_offset(spec.num_layers());
  for (int q = 0; q < spec.n_out(); ++q) out_targets.push_back(out_off + q);

  double total_grad = 0.0;
  for (const auto& pair : cspec.pairs) {
    if (pair.n_in() != spec.n_in() || pair.n_out() != spec.n_out()) {
      throw std::invalid_argument("training pair widths do not match the network");
    }
    const ComplexMatrix obs = cspec.observable(pair);
    ComplexVector phi = ComplexVector::Zero(d);
    phi.head(pair.input().dim()) = pair.input().vector();

    if (method == GradSMethod::StateVector) {
      // phi_p after perceptron p; lambda_p = U_{>p}^dagger O U_{>p} phi_p
      // obtained by pulling O phi_P back through the chain.
      std::vector<ComplexVector> states;
      states.reserve(count);
      for (std::size_t p = 0; p < count; ++p) {
        apply_matrix_inplace(phi, total, flow.unitaries[p], targets[p]);
        states.push_back(phi);
      }
      ComplexVector lambda = apply_operator(phi, total, obs, out_targets);
      for (std::size_t p = count; p-- > 0;) {
        ComplexVector h_phi = apply_operator(states[p], total, flow.generators[p], targets[p]);
        // i Tr[H [phi phi^dagger, O~]] = -2 Im <O~ phi | H phi>
        total_grad += -2.0 * lambda.dot(h_phi).imag();
        apply_matrix_inplace(lambda, total, flow.unitaries[p].adjoint(), targets[p]);
      }
    } else {
      std::vector<ComplexMatrix> rhos;
      ComplexMatrix rho = phi * phi.adjoint();
      for (std::size_t p = 0; p < count; ++p) {
        conjugate_inplace(rho, total, flow.unitaries[p], targets[p]);
        rhos.push_back(rho);
      }
      ComplexMatrix otilde = embed(obs, total, out_targets);
      for (std::size_t p = count; p-- > 0;) {
        const ComplexMatrix h = embed(flow.generators[p], total, targets[p]);
        const ComplexMatrix comm = rhos[p] * otilde - otilde * rhos[p];
        const Complex term = Complex(0, 1) * (h * comm).trace();
        if (std::abs(term.imag()) > 1e-9 * std::max(1.0, std::abs(term))) {
          throw SimulationError("grad_s term has an imaginary part");
        }
        total_grad += term.real();
        conjugate_inplace(otilde, total, flow.unitaries[p].adjoint(), targets[p]);
      }
    }
  }
  return total_grad / double(cspec.pairs.size());
}

MatrixFlowState update_step(const MatrixFlowState& flow, double epsilon) {
  if (flow.unitaries.size() != flow.generators.size()) throw std::invalid_argument("flow is missing generators");
  MatrixFlowState out = flow;
  if (epsilon != 0.0) {
    for (std::size_t i = 0; i < out.unitaries.size(); ++i) {
      out.unitaries[i] = herm_expm(flow.generators[i], epsilon) * flow.unitaries[i];
    }
  }
  out.step += epsilon;
  return out;
}

}  // namespace plateau
