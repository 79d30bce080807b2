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

#include "plateau/training.hpp"

#include <cmath>
#include <stdexcept>

#include "plateau/errors.hpp"

namespace plateau {

TrainingPair TrainingPair::product(QuantumState input, std::vector<ComplexVector> factors) {
  if (!input.is_pure()) throw std::invalid_argument("training input must be pure");
  if (factors.empty()) throw std::invalid_argument("product output needs at least one factor");
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    if (f.size() != 2) throw std::invalid_argument("output factors must be single-qubit states");
    out = kron(f, out);
  }
  return TrainingPair(std::move(input), std::move(out), std::move(factors));
}

TrainingPair TrainingPair::full(QuantumState input, ComplexVector output) {
  if (!input.is_pure()) throw std::invalid_argument("training input must be pure");
  qubits_for_dim(output.size());
  return TrainingPair(std::move(input), std::move(output), {});
}

void TrainingPair::validate(double tol) const {
  input_.validate(tol);
  if (std::abs(output_.norm() - 1.0) > tol) throw SimulationError("output state not normalized");
  for (const auto& f : factors_) {
    if (std::abs(f.norm() - 1.0) > tol) throw SimulationError("output factor not normalized");
  }
}

}  // namespace plateau
