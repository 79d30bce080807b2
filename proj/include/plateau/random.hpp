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
#include <string>
#include <vector>

#include "plateau/linalg.hpp"
#include "plateau/rng.hpp"
#include "plateau/training.hpp"

namespace plateau {

// label[q] is the Pauli acting on qubit q.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string label);
  // Base-4 digit q of `code` selects I, X, Y, Z on qubit q.
  static PauliString from_index(std::uint64_t code, int num_qubits);

  const std::string& label() const { return label_; }
  int num_qubits() const { return int(label_.size()); }
  bool is_identity() const;
  ComplexMatrix matrix() const;

  bool operator==(const PauliString& o) const { return label_ == o.label_; }
  bool operator!=(const PauliString& o) const { return label_ != o.label_; }

 private:
  std::string label_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;

  friend void add_scaled_pauli(ComplexMatrix& acc, const PauliString& p, double coeff);
};

// acc += coeff * P, touching only the 2^k nonzero entries.
void add_scaled_pauli(ComplexMatrix& acc, const PauliString& p, double coeff);

ComplexMatrix sample_haar_unitary(int num_qubits, RngStream& rng);
// Haar unitary of arbitrary dimension d.
ComplexMatrix sample_haar_unitary_dim(Eigen::Index d, RngStream& rng);

// Haar-random pure state of dimension d.
ComplexVector sample_haar_state(Eigen::Index d, RngStream& rng);

struct PauliExpansion {
  // coefficients[c] multiplies PauliString::from_index(c, num_qubits).
  std::vector<double> coefficients;
  ComplexMatrix matrix;
};

PauliExpansion sample_pauli_expansion(int num_qubits, double trace_square_norm, RngStream& rng);
ComplexMatrix sample_pauli_hermitian(int num_qubits, double trace_square_norm, RngStream& rng);

// Uniformly random Pauli string other than the identity.
PauliString sample_nonidentity_pauli(int num_qubits, RngStream& rng);

enum class InputKind { HaarProduct, HaarEntangled, ComputationalBasis };

// Output is a uniformly random computational basis string, stored as a
// product of single-qubit states.
TrainingPair sample_product_training_pair(int n_in, int n_out, RngStream& rng,
                                          InputKind kind = InputKind::HaarProduct);

}  // namespace plateau
