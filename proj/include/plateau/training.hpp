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

#include <optional>
#include <vector>

#include "plateau/linalg.hpp"

namespace plateau {

// One {|phi_in>, |phi_out>} pair. The output is either a product of
// single-qubit states (usable by both costs) or a full n_out-qubit state
// (global cost only).
class TrainingPair {
 public:
  // factors[j] is the state of output qubit j.
  static TrainingPair product(QuantumState input, std::vector<ComplexVector> factors);
  static TrainingPair full(QuantumState input, ComplexVector output);

  const QuantumState& input() const { return input_; }
  const ComplexVector& output_state() const { return output_; }
  const std::vector<ComplexVector>& output_factors() const { return factors_; }
  bool is_product() const { return !factors_.empty(); }
  int n_in() const { return input_.num_qubits(); }
  int n_out() const { return qubits_for_dim(output_.size()); }

  void validate(double tol = 1e-10) const;

 private:
  TrainingPair(QuantumState in, ComplexVector out, std::vector<ComplexVector> f)
      : input_(std::move(in)), output_(std::move(out)), factors_(std::move(f)) {}

  QuantumState input_;
  ComplexVector output_;
  std::vector<ComplexVector> factors_;
};

}  // namespace plateau
