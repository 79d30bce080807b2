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

#include "plateau/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

std::atomic<bool> g_validation{true};

void check_targets(int num_qubits, const std::vector<int>& targets) {
  std::uint64_t seen = 0;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw std::out_of_range("qubit index " + std::to_string(t) + " outside register of " +
                              std::to_string(num_qubits));
    }
    if (seen & (std::uint64_t(1) << t)) {
      throw std::invalid_argument("duplicate target qubit " + std::to_string(t));
    }
    seen |= std::uint64_t(1) << t;
  }
}

// Spread the bits of `value` over the given (ascending or not) positions.
std::uint64_t deposit(std::uint64_t value, const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (value & (std::uint64_t(1) << i)) out |= std::uint64_t(1) << positions[i];
  }
  return out;
}

std::vector<std::uint64_t> deposit_table(const std::vector<int>& positions) {
  std::vector<std::uint64_t> table(std::size_t(1) << positions.size());
  for (std::size_t v = 0; v < table.size(); ++v) table[v] = deposit(v, positions);
  return table;
}

}  // namespace

bool validation_enabled() { return g_validation.load(std::memory_order_relaxed); }
void set_validation(bool on) { g_validation.store(on, std::memory_order_relaxed); }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(d) <= tol;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol;
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  return n;
}

QuantumState QuantumState::pure(ComplexVector amplitudes) {
  int n = qubits_for_dim(amplitudes.size());
  return QuantumState(n, std::move(amplitudes));
}

QuantumState QuantumState::mixed(ComplexMatrix rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  int n = qubits_for_dim(rho.rows());
  return QuantumState(n, std::move(rho));
}

QuantumState QuantumState::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 0 || num_qubits > 30) throw std::invalid_argument("bad qubit count");
  ComplexVector v = ComplexVector::Zero(Eigen::Index(1) << num_qubits);
  if (index >= std::uint64_t(v.size())) throw std::out_of_range("basis index out of range");
  v[Eigen::Index(index)] = 1.0;
  return QuantumState(num_qubits, std::move(v));
}

const ComplexVector& QuantumState::vector() const {
  if (!is_pure()) throw std::logic_error("state is mixed");
  return std::get<ComplexVector>(rep_);
}

const ComplexMatrix& QuantumState::density() const {
  if (is_pure()) throw std::logic_error("state is pure");
  return std::get<ComplexMatrix>(rep_);
}

ComplexMatrix QuantumState::to_density() const {
  if (is_pure()) {
    const auto& v = vector();
    return v * v.adjoint();
  }
  return density();
}

void QuantumState::validate(double tol) const {
  if (is_pure()) {
    double norm = vector().norm();
    if (std::abs(norm - 1.0) > tol) {
      throw SimulationError("pure state norm " + std::to_string(norm) + " != 1");
    }
    return;
  }
  const auto& rho = density();
  if (!is_hermitian(rho, tol)) throw SimulationError("density matrix not Hermitian");
  Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) throw SimulationError("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw SimulationError("density matrix has a negative eigenvalue");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

QuantumState kron(const QuantumState& high, const QuantumState& low) {
  if (high.is_pure() && low.is_pure()) {
    return QuantumState::pure(kron(high.vector(), low.vector()));
  }
  return QuantumState::mixed(kron(high.to_density(), low.to_density()));
}

QuantumState partial_trace(const QuantumState& state, const std::vector<int>& keep) {
  const int n = state.num_qubits();
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  check_targets(n, kept);
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  const auto kt = deposit_table(kept);
  const auto et = deposit_table(traced);
  const auto dk = Eigen::Index(kt.size());
  const auto de = Eigen::Index(et.size());

  ComplexMatrix out;
  if (state.is_pure()) {
    const auto& psi = state.vector();
    ComplexMatrix m(dk, de);
    for (Eigen::Index e = 0; e < de; ++e) {
      for (Eigen::Index a = 0; a < dk; ++a) m(a, e) = psi[Eigen::Index(kt[a] | et[e])];
    }
    out = m * m.adjoint();
  } else {
    const auto& rho = state.density();
    out = ComplexMatrix::Zero(dk, dk);
    for (Eigen::Index b = 0; b < dk; ++b) {
      for (Eigen::Index a = 0; a < dk; ++a) {
        Complex acc = 0.0;
        for (Eigen::Index e = 0; e < de; ++e) {
          acc += rho(Eigen::Index(kt[a] | et[e]), Eigen::Index(kt[b] | et[e]));
        }
        out(a, b) = acc;
      }
    }
  }
  return QuantumState::mixed(std::move(out));
}

namespace {

// Applies op to `columns` consecutive vectors of length 2^num_qubits.
void apply_to_columns(Complex* data, Eigen::Index columns, int num_qubits, const ComplexMatrix& op,
                      const std::vector<int>& targets) {
  const int k = int(targets.size());
  const Eigen::Index local = Eigen::Index(1) << k;
  if (op.rows() != local || op.cols() != local) {
    throw std::invalid_argument("operator of size " + std::to_string(op.rows()) + " does not act on " +
                                std::to_string(k) + " qubits");
  }
  check_targets(num_qubits, targets);

  const auto offsets = deposit_table(targets);
  std::vector<int> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> bases(std::size_t(1) << (num_qubits - k));
  for (std::uint64_t i = 0; i < bases.size(); ++i) {
    std::uint64_t base = i;
    for (int t : sorted) {
      std::uint64_t low = base & ((std::uint64_t(1) << t) - 1);
      base = ((base >> t) << (t + 1)) | low;
    }
    bases[i] = base;
  }

  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  std::vector<Complex> in(local), out(local);
  for (Eigen::Index col = 0; col < columns; ++col) {
    Complex* v = data + col * dim;
    for (std::uint64_t base : bases) {
      for (Eigen::Index c = 0; c < local; ++c) in[c] = v[base | offsets[c]];
      std::fill(out.begin(), out.end(), Complex(0.0));
      for (Eigen::Index c = 0; c < local; ++c) {
        const Complex x = in[c];
        if (x == Complex(0.0)) continue;
        const Complex* opc = op.data() + c * local;
        for (Eigen::Index r = 0; r < local; ++r) out[r] += opc[r] * x;
      }
      for (Eigen::Index r = 0; r < local; ++r) v[base | offsets[r]] = out[r];
    }
  }
}

}  // namespace

void apply_matrix_inplace(Complex* data, int num_qubits, const ComplexMatrix& op,
                          const std::vector<int>& targets) {
  apply_to_columns(data, 1, num_qubits, op, targets);
}

void apply_matrix_inplace(ComplexVector& psi, int num_qubits, const ComplexMatrix& op,
                          const std::vector<int>& targets) {
  if (psi.size() != (Eigen::Index(1) << num_qubits)) throw std::invalid_argument("state size mismatch");
  apply_matrix_inplace(psi.data(), num_qubits, op, targets);
}

void conjugate_inplace(ComplexMatrix& rho, int num_qubits, const ComplexMatrix& u,
                       const std::vector<int>& targets) {
  const Eigen::Index d = Eigen::Index(1) << num_qubits;
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("density size mismatch");
  apply_to_columns(rho.data(), d, num_qubits, u, targets);
  rho.adjointInPlace();
  apply_to_columns(rho.data(), d, num_qubits, u, targets);
  rho.adjointInPlace();
}

QuantumState apply_unitary(const QuantumState& state, const ComplexMatrix& u,
                           const std::vector<int>& targets) {
  if (validation_enabled() && !is_unitary(u)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
  if (state.is_pure()) {
    ComplexVector psi = state.vector();
    apply_matrix_inplace(psi, state.num_qubits(), u, targets);
    return QuantumState::pure(std::move(psi));
  }
  ComplexMatrix rho = state.density();
  conjugate_inplace(rho, state.num_qubits(), u, targets);
  return QuantumState::mixed(std::move(rho));
}

ComplexVector apply_operator(const ComplexVector& psi, int num_qubits, const ComplexMatrix& op,
                             const std::vector<int>& targets) {
  ComplexVector out = psi;
  apply_matrix_inplace(out, num_qubits, op, targets);
  return out;
}

double expectation(const QuantumState& state, const ComplexMatrix& obs) {
  if (obs.rows() != state.dim() || obs.cols() != state.dim()) {
    throw std::invalid_argument("observable dimension does not match state");
  }
  if (validation_enabled() && !is_hermitian(obs, 1e-12 * std::max(1.0, max_abs(obs)))) {
    throw std::invalid_argument("observable is not Hermitian");
  }
  Complex value;
  if (state.is_pure()) {
    const auto& v = state.vector();
    value = v.dot(obs * v);
  } else {
    value = obs.transpose().cwiseProduct(state.density()).sum();
  }
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, max_abs(obs))) {
    throw SimulationError("expectation has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double scale) {
  if (!is_hermitian(h, 1e-12 * std::max(1.0, max_abs(h)))) {
    throw std::invalid_argument("herm_expm: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw SimulationError("eigendecomposition failed");
  const auto& lambda = es.eigenvalues();
  ComplexVector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases[i] = std::polar(1.0, scale * lambda[i]);
  const auto& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

ComplexMatrix embed(const ComplexMatrix& op, int num_qubits, const std::vector<int>& targets) {
  const Eigen::Index d = Eigen::Index(1) << num_qubits;
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  for (Eigen::Index c = 0; c < d; ++c) apply_matrix_inplace(m.data() + c * d, num_qubits, op, targets);
  return m;
}

ComplexMatrix swap_matrix() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

}  // namespace plateau
