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

#include "plateau/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace plateau {

PauliString::PauliString(std::string label) : label_(std::move(label)) {
  if (label_.empty() || label_.size() > 30) throw std::invalid_argument("Pauli label length out of range");
  for (std::size_t q = 0; q < label_.size(); ++q) {
    const std::uint64_t bit = std::uint64_t(1) << q;
    switch (label_[q]) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y': x_mask_ |= bit; z_mask_ |= bit; ++y_count_; break;
      case 'Z': z_mask_ |= bit; break;
      default: throw std::invalid_argument("bad Pauli letter in '" + label_ + "'");
    }
  }
}

PauliString PauliString::from_index(std::uint64_t code, int num_qubits) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::string label(std::size_t(num_qubits), 'I');
  for (int q = 0; q < num_qubits; ++q) {
    label[std::size_t(q)] = kLetters[code & 3];
    code >>= 2;
  }
  return PauliString(label);
}

bool PauliString::is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

void add_scaled_pauli(ComplexMatrix& acc, const PauliString& p, double coeff) {
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = coeff * kIPow[p.y_count_ & 3];
  const Eigen::Index d = Eigen::Index(1) << p.num_qubits();
  for (Eigen::Index b = 0; b < d; ++b) {
    const auto ub = std::uint64_t(b);
    const bool odd = std::popcount(ub & p.z_mask_) & 1;
    acc(Eigen::Index(ub ^ p.x_mask_), b) += odd ? -base : base;
  }
}

ComplexMatrix PauliString::matrix() const {
  const Eigen::Index d = Eigen::Index(1) << num_qubits();
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  add_scaled_pauli(m, *this, 1.0);
  return m;
}

ComplexMatrix sample_haar_unitary_dim(Eigen::Index d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  ComplexMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0 ? rjj / mag : Complex(1.0);
  }
  return q;
}

ComplexMatrix sample_haar_unitary(int num_qubits, RngStream& rng) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  return sample_haar_unitary_dim(Eigen::Index(1) << num_qubits, rng);
}

ComplexVector sample_haar_state(Eigen::Index d, RngStream& rng) {
  ComplexVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

PauliExpansion sample_pauli_expansion(int num_qubits, double trace_square_norm, RngStream& rng) {
  if (!(trace_square_norm > 0)) throw std::invalid_argument("trace_square_norm must be positive");
  if (num_qubits < 1 || num_qubits > 10) throw std::invalid_argument("num_qubits out of range");
  const std::uint64_t count = std::uint64_t(1) << (2 * num_qubits);
  const double d = std::ldexp(1.0, num_qubits);

  PauliExpansion out;
  out.coefficients.resize(count);
  double sumsq = 0.0;
  for (auto& c : out.coefficients) {
    c = rng.normal();
    sumsq += c * c;
  }
  // Tr[H^2] = d * sum h_P^2.
  const double scale = std::sqrt(trace_square_norm / (d * sumsq));
  for (auto& c : out.coefficients) c *= scale;

  out.matrix = ComplexMatrix::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::uint64_t code = 0; code < count; ++code) {
    add_scaled_pauli(out.matrix, PauliString::from_index(code, num_qubits), out.coefficients[code]);
  }
  return out;
}

ComplexMatrix sample_pauli_hermitian(int num_qubits, double trace_square_norm, RngStream& rng) {
  return sample_pauli_expansion(num_qubits, trace_square_norm, rng).matrix;
}

PauliString sample_nonidentity_pauli(int num_qubits, RngStream& rng) {
  const std::uint64_t count = std::uint64_t(1) << (2 * num_qubits);
  return PauliString::from_index(1 + rng.below(count - 1), num_qubits);
}

TrainingPair sample_product_training_pair(int n_in, int n_out, RngStream& rng, InputKind kind) {
  if (n_in < 1 || n_out < 1) throw std::invalid_argument("qubit counts must be >= 1");
  ComplexVector input;
  switch (kind) {
    case InputKind::HaarProduct: {
      input = ComplexVector::Ones(1);
      for (int q = 0; q < n_in; ++q) input = kron(sample_haar_state(2, rng), input);
      break;
    }
    case InputKind::HaarEntangled:
      input = sample_haar_state(Eigen::Index(1) << n_in, rng);
      break;
    case InputKind::ComputationalBasis: {
      input = ComplexVector::Zero(Eigen::Index(1) << n_in);
      input[Eigen::Index(rng.below(std::uint64_t(1) << n_in))] = 1.0;
      break;
    }
  }
  std::vector<ComplexVector> factors;
  for (int q = 0; q < n_out; ++q) {
    ComplexVector f = ComplexVector::Zero(2);
    f[Eigen::Index(rng.below(2))] = 1.0;
    factors.push_back(std::move(f));
  }
  return TrainingPair::product(QuantumState::pure(std::move(input)), std::move(factors));
}

}  // namespace plateau
