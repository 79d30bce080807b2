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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "plateau/errors.hpp"
#include "plateau/linalg.hpp"
#include "plateau/random.hpp"

namespace plateau {
namespace {

ComplexMatrix pauli(char c) { return PauliString(std::string(1, c)).matrix(); }

ComplexMatrix random_density(int n, RngStream& rng) {
  const Eigen::Index d = Eigen::Index(1) << n;
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(2, 2)))
                  .isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(Kron, BasisProjectors) {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(kron(p0, p1), expected);
}

TEST(Kron, XTimesZ) {
  ComplexMatrix m = kron(pauli('X'), pauli('Z'));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 2) = 1.0;
  expected(1, 3) = -1.0;
  expected(2, 0) = 1.0;
  expected(3, 1) = -1.0;
  EXPECT_EQ(m, expected);
}

TEST(PartialTrace, ProductState) {
  RngStream rng(1, 0);
  ComplexMatrix rho_a = random_density(2, rng);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  // B is qubit 2 (high bit).
  auto out = partial_trace(QuantumState::mixed(kron(zero, rho_a)), {0, 1});
  EXPECT_LE(max_abs(out.density() - rho_a), 1e-15);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  auto out = partial_trace(QuantumState::pure(bell), {1});
  EXPECT_LE(max_abs(out.density() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTrace, RandomThreeQubitStateAgainstIndexSum) {
  RngStream rng(2, 0);
  ComplexVector psi = sample_haar_state(8, rng);
  auto out = partial_trace(QuantumState::pure(psi), {0});
  ComplexMatrix ref = oracle::reduce(psi * psi.adjoint(), 3, {0});
  EXPECT_LE(max_abs(out.density() - ref), 1e-14);
  EXPECT_NEAR(out.density().trace().real(), 1.0, 1e-10);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.density());
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  EXPECT_NO_THROW(out.validate());
}

TEST(PartialTrace, KeepsArbitrarySubsetOfMixedState) {
  RngStream rng(3, 0);
  ComplexMatrix rho = random_density(4, rng);
  auto out = partial_trace(QuantumState::mixed(rho), {3, 1});
  EXPECT_LE(max_abs(out.density() - oracle::reduce(rho, 4, {1, 3})), 1e-14);
}

TEST(PartialTrace, TracingEverythingGivesOne) {
  RngStream rng(4, 0);
  auto out = partial_trace(QuantumState::mixed(random_density(3, rng)), {});
  ASSERT_EQ(out.dim(), 1);
  EXPECT_NEAR(std::abs(out.density()(0, 0) - 1.0), 0.0, 1e-10);
  auto out_pure = partial_trace(QuantumState::pure(sample_haar_state(8, rng)), {});
  EXPECT_NEAR(std::abs(out_pure.density()(0, 0) - 1.0), 0.0, 1e-10);
}

TEST(PartialTrace, RejectsOutOfRangeIndex) {
  EXPECT_THROW(partial_trace(QuantumState::basis(2, 0), {2}), std::out_of_range);
}

TEST(ApplyUnitary, IdentityLeavesStateUnchanged) {
  RngStream rng(5, 0);
  ComplexVector psi = sample_haar_state(8, rng);
  auto out = apply_unitary(QuantumState::pure(psi), ComplexMatrix::Identity(4, 4), {2, 0});
  EXPECT_EQ(out.vector(), psi);
}

TEST(ApplyUnitary, XOnQubitZeroFlipsLowBit) {
  auto out = apply_unitary(QuantumState::basis(2, 0), pauli('X'), {0});
  EXPECT_EQ(out.vector(), QuantumState::basis(2, 1).vector());
}

TEST(ApplyUnitary, SwapPermutesIndexBits) {
  RngStream rng(6, 0);
  ComplexVector psi = sample_haar_state(4, rng);
  auto out = apply_unitary(QuantumState::pure(psi), swap_matrix(), {0, 1});
  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) perm(((i & 1) << 1) | (i >> 1), i) = 1.0;
  EXPECT_LE((out.vector() - perm * psi).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ApplyUnitary, MatchesFullOperatorOnScatteredTargets) {
  RngStream rng(7, 0);
  ComplexMatrix u = sample_haar_unitary(2, rng);
  ComplexVector psi = sample_haar_state(16, rng);
  auto out = apply_unitary(QuantumState::pure(psi), u, {3, 1});
  ComplexVector ref = oracle::full_operator(u, 4, {3, 1}) * psi;
  EXPECT_LE((out.vector() - ref).cwiseAbs().maxCoeff(), 1e-14);

  ComplexMatrix rho = random_density(4, rng);
  auto mixed = apply_unitary(QuantumState::mixed(rho), u, {3, 1});
  ComplexMatrix full = oracle::full_operator(u, 4, {3, 1});
  EXPECT_LE(max_abs(mixed.density() - full * rho * full.adjoint()), 1e-14);
}

TEST(ApplyUnitary, InverseRestoresState) {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix u = sample_haar_unitary(3, rng);
    ComplexVector psi = sample_haar_state(32, rng);
    auto s = QuantumState::pure(psi);
    auto back = apply_unitary(apply_unitary(s, u, {4, 0, 2}), u.adjoint(), {4, 0, 2});
    EXPECT_LE((back.vector() - psi).cwiseAbs().maxCoeff(), 1e-10);
    ComplexMatrix rho = random_density(5, rng);
    auto m = QuantumState::mixed(rho);
    auto mback = apply_unitary(apply_unitary(m, u, {1, 2, 3}), u.adjoint(), {1, 2, 3});
    EXPECT_LE(max_abs(mback.density() - rho), 1e-10);
  }
}

TEST(ApplyUnitary, PreservesTraceAndPurity) {
  RngStream rng(9, 0);
  ComplexMatrix u = sample_haar_unitary(2, rng);
  auto mixed = apply_unitary(QuantumState::mixed(random_density(3, rng)), u, {0, 2});
  EXPECT_NEAR(mixed.density().trace().real(), 1.0, 1e-12);
  auto pure = apply_unitary(QuantumState::pure(sample_haar_state(8, rng)), u, {2, 1});
  EXPECT_NEAR(pure.vector().norm(), 1.0, 1e-12);
}

TEST(ApplyUnitary, Errors) {
  auto s = QuantumState::basis(2, 0);
  EXPECT_THROW(apply_unitary(s, ComplexMatrix::Identity(4, 4), {0}), std::invalid_argument);
  EXPECT_THROW(apply_unitary(s, pauli('X'), {2}), std::out_of_range);
  EXPECT_THROW(apply_unitary(s, swap_matrix(), {1, 1}), std::invalid_argument);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(apply_unitary(s, bad, {0}), std::invalid_argument);
  ValidationScope off(false);
  EXPECT_NO_THROW(apply_unitary(s, bad, {0}));
}

TEST(Expectation, Basics) {
  EXPECT_DOUBLE_EQ(expectation(QuantumState::basis(1, 0), pauli('Z')), 1.0);
  auto mm = QuantumState::mixed(ComplexMatrix::Identity(2, 2) / 2.0);
  EXPECT_DOUBLE_EQ(expectation(mm, pauli('X')), 0.0);
  RngStream rng(10, 0);
  auto s = QuantumState::pure(sample_haar_state(8, rng));
  EXPECT_NEAR(expectation(s, ComplexMatrix::Identity(8, 8)), 1.0, 1e-12);
}

TEST(Expectation, LinearInObservable) {
  RngStream rng(11, 0);
  auto s = QuantumState::mixed(random_density(2, rng));
  ComplexMatrix a = kron(pauli('X'), pauli('Y'));
  ComplexMatrix b = kron(pauli('Z'), pauli('I'));
  EXPECT_NEAR(expectation(s, 2.0 * a - 3.0 * b), 2.0 * expectation(s, a) - 3.0 * expectation(s, b), 1e-12);
}

TEST(Expectation, DimensionMismatch) {
  EXPECT_THROW(expectation(QuantumState::basis(2, 0), pauli('Z')), std::invalid_argument);
}

TEST(HermExpm, ZeroScaleIsIdentity) {
  EXPECT_LE(max_abs(herm_expm(pauli('Y'), 0.0) - ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(HermExpm, ZTimesPiIsMinusIdentity) {
  EXPECT_LE(max_abs(herm_expm(pauli('Z'), std::numbers::pi) + ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(HermExpm, XTimesHalfPiIsIX) {
  ComplexMatrix expected = Complex(0, 1) * pauli('X');
  EXPECT_LE(max_abs(herm_expm(pauli('X'), std::numbers::pi / 2) - expected), 1e-15);
}

TEST(HermExpm, GroupLawAndUnitarity) {
  RngStream rng(12, 0);
  ComplexMatrix h = sample_pauli_hermitian(3, 16.0, rng);
  ComplexMatrix ab = herm_expm(h, 0.3) * herm_expm(h, -1.1);
  EXPECT_LE(max_abs(ab - herm_expm(h, -0.8)), 1e-9);
  EXPECT_TRUE(is_unitary(herm_expm(h, 2.7), 1e-10));
}

TEST(HermExpm, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_expm(m, 1.0), std::invalid_argument);
}

TEST(QuantumState, ValidateCatchesBadStates) {
  ComplexVector v = ComplexVector::Ones(2);
  EXPECT_THROW(QuantumState::pure(v).validate(), SimulationError);
  EXPECT_THROW(QuantumState::mixed(ComplexMatrix::Identity(2, 2)).validate(), SimulationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(QuantumState::mixed(neg).validate(), SimulationError);
  EXPECT_THROW(QuantumState::pure(ComplexVector::Ones(3)), std::invalid_argument);
}

}  // namespace
}  // namespace plateau
