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

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace plateau {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Qubit q is bit q of the basis index (little-endian). kron(a, b) puts b on
// the low bits, so for registers kron(high, low).

// Global switch for the unitarity / Hermiticity checks in apply_unitary,
// herm_expm and friends. On by default; Monte-Carlo loops turn it off.
bool validation_enabled();
void set_validation(bool on);

class ValidationScope {
 public:
  explicit ValidationScope(bool on) : prev_(validation_enabled()) { set_validation(on); }
  ~ValidationScope() { set_validation(prev_); }
  ValidationScope(const ValidationScope&) = delete;
  ValidationScope& operator=(const ValidationScope&) = delete;

 private:
  bool prev_;
};

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
bool is_hermitian(const ComplexMatrix& h, double tol = 1e-12);

// Integer log2 of a power of two; throws otherwise.
int qubits_for_dim(Eigen::Index dim);

class QuantumState {
 public:
  static QuantumState pure(ComplexVector amplitudes);
  static QuantumState mixed(ComplexMatrix rho);
  // |index> on n qubits.
  static QuantumState basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return Eigen::Index(1) << num_qubits_; }
  bool is_pure() const { return std::holds_alternative<ComplexVector>(rep_); }

  const ComplexVector& vector() const;   // pure only
  const ComplexMatrix& density() const;  // mixed only
  ComplexMatrix to_density() const;

  // Throws SimulationError if the state violates its invariants.
  void validate(double tol = 1e-10) const;

 private:
  QuantumState(int n, std::variant<ComplexVector, ComplexMatrix> rep)
      : num_qubits_(n), rep_(std::move(rep)) {}

  int num_qubits_ = 0;
  std::variant<ComplexVector, ComplexMatrix> rep_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
QuantumState kron(const QuantumState& high, const QuantumState& low);

// Density matrix over the kept qubits. Kept qubits are renumbered in
// ascending order of their original index.
QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep);

// U acts on `targets`; bit t of U's local index is qubit targets[t].
QuantumState apply_unitary(const QuantumState& state, const ComplexMatrix& u,
                           const std::vector<int>& targets);

// Same but with no unitarity requirement. Used for observables.
ComplexVector apply_operator(const ComplexVector& psi, int num_qubits,
                             const ComplexMatrix& op, const std::vector<int>& targets);

// In-place kernels. `data` holds `count` contiguous vectors of length 2^n.
void apply_matrix_inplace(Complex* data, int num_qubits, const ComplexMatrix& op,
                          const std::vector<int>& targets);
void apply_matrix_inplace(ComplexVector& psi, int num_qubits, const ComplexMatrix& op,
                          const std::vector<int>& targets);
// rho <- U rho U^dagger.
void conjugate_inplace(ComplexMatrix& rho, int num_qubits, const ComplexMatrix& u,
                       const std::vector<int>& targets);

double expectation(const QuantumState& state, const ComplexMatrix& obs);

// exp(i * scale * h) from the Hermitian eigendecomposition of h.
ComplexMatrix herm_expm(const ComplexMatrix& h, double scale);

// Full 2^n x 2^n matrix of `op` acting on `targets` of an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, int num_qubits, const std::vector<int>& targets);

ComplexMatrix swap_matrix();

}  // namespace plateau
