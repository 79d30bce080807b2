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
#include "plateau/gradient.hpp"

namespace plateau {
namespace {

constexpr double kPi = std::numbers::pi;

TrainingPair zero_pair() {
  ComplexVector z = ComplexVector::Zero(2);
  z[0] = 1.0;
  return TrainingPair::product(QuantumState::basis(1, 0), {z});
}

RpqcParameterRef toy_ref(int j = 1) { return {1, j, 1, PauliString("IY")}; }

TEST(GradTheta, ToyClosedForm) {
  CostSpec cs{CostKind::Global, {zero_pair()}};
  EXPECT_NEAR(grad_theta_shift(toy_network({0.0}), cs, toy_ref()), 0.0, 1e-15);
  EXPECT_NEAR(grad_theta_shift(toy_network({kPi / 2}), cs, toy_ref()), 0.5, 1e-15);
  for (double theta : {0.3, 1.7, -2.2}) {
    EXPECT_NEAR(grad_theta_shift(toy_network({theta}), cs, toy_ref()), std::sin(theta) / 2, 1e-14);
    EXPECT_NEAR(cost(toy_network({theta}), cs), std::pow(std::sin(theta / 2), 2), 1e-14);
  }
}

TEST(GradTheta, ToyFiniteDifferenceWithinTaylorBound) {
  CostSpec cs{CostKind::Global, {zero_pair()}};
  for (double h : {1e-2, 1e-3, 1e-4}) {
    for (double theta : {0.4, 1.1, 2.9}) {
      auto spec = toy_network({theta});
      EXPECT_LE(std::abs(grad_theta_fd(spec, cs, toy_ref(), h) - grad_theta_shift(spec, cs, toy_ref())), 10 * h * h);
    }
  }
}

TEST(GradTheta, ToyIsOddInTheta) {
  CostSpec cs{CostKind::Global, {zero_pair()}};
  for (double theta : {0.7, 2.3}) {
    double plus = grad_theta_fd(toy_network({theta}), cs, toy_ref(), 1e-4);
    double minus = grad_theta_fd(toy_network({-theta}), cs, toy_ref(), 1e-4);
    EXPECT_NEAR(plus, -minus, 1e-10);
    EXPECT_GT(std::abs(plus), 0.1);
  }
}

// A rotation on the input qubit after it has been swapped out never reaches
// the output, so the cost does not depend on its angle.
NetworkSpec constant_cost_network(double theta) {
  NetworkSpec spec = swap_network(1);
  RpqcCircuit c;
  c.gates.push_back(FixedGate{swap_matrix(), {0, 1}});
  c.gates.push_back(RotationGate{PauliString("YI"), theta});
  spec.perceptrons[0].source = c;
  return spec;
}

TEST(GradTheta, ConstantCostNetwork) {
  CostSpec cs{CostKind::Global, {zero_pair()}};
  RpqcParameterRef ref{1, 1, 1, PauliString("YI")};
  for (double theta : {0.0, 0.9}) {
    EXPECT_NEAR(cost(constant_cost_network(theta), cs), 0.0, 1e-15);
    EXPECT_EQ(grad_theta_shift(constant_cost_network(theta), cs, ref), 0.0);
    EXPECT_LE(std::abs(grad_theta_fd(constant_cost_network(theta), cs, ref, 1e-4)), 1e-8);
  }
}

TEST(GradTheta, BadReferencesThrow) {
  CostSpec cs{CostKind::Global, {zero_pair()}};
  auto spec = toy_network({0.1});
  EXPECT_THROW(grad_theta_shift(spec, cs, {1, 1, 0, PauliString("IY")}), std::invalid_argument);
  EXPECT_THROW(grad_theta_shift(spec, cs, {1, 1, 1, PauliString("IX")}), std::invalid_argument);
  EXPECT_THROW(grad_theta_shift(spec, cs, {1, 2, 1, PauliString("IY")}), std::out_of_range);
  EXPECT_THROW(grad_theta_shift(swap_network(1), cs, toy_ref()), std::invalid_argument);
  EXPECT_THROW(grad_theta_fd(spec, cs, toy_ref(), 0.0), std::invalid_argument);
}

struct Instance {
  NetworkSpec spec;
  RpqcParameterRef ref;
};

// Random (network, parameter) instance of the requested family.
Instance random_instance(Family family, RngStream& rng) {
  switch (family) {
    case Family::LocalM1Toy: {
      const int n = 1 + int(rng.below(3));
      auto spec = sample_toy_network(n, rng);
      return {spec, toy_ref(1 + int(rng.below(std::uint64_t(n))))};
    }
    case Family::GlobalDeep: {
      const int n = 1 + int(rng.below(2));
      auto spec = sample_global_deep_circuit(n, rng, 6);
      const int j = 1 + int(rng.below(std::uint64_t(n)));
      const int k = 2 * int(rng.below(6)) + 1;
      const auto& gate = std::get<RotationGate>(std::get<RpqcCircuit>(spec.perceptron(1, j).source).gates[std::size_t(k)]);
      return {spec, {1, j, k, gate.generator}};
    }
    case Family::LocalM2Brick: {
      const int n = 2 * (1 + int(rng.below(2)));
      auto spec = sample_brick_network(n, 2, rng, 2 * kPi * rng.uniform());
      const auto& gate = std::get<RotationGate>(std::get<RpqcCircuit>(spec.perceptron(1, 1).source).gates[1]);
      return {spec, {1, 1, 1, gate.generator}};
    }
  }
  throw std::logic_error("unreachable");
}

TEST(GradTheta, ShiftMatchesFiniteDifferenceOnRandomInstances) {
  const double h = 1e-4;
  for (Family family : {Family::LocalM1Toy, Family::GlobalDeep, Family::LocalM2Brick}) {
    for (int i = 0; i < 50; ++i) {
      RngStream rng(21, std::uint64_t(i), std::uint64_t(family));
      Instance inst = random_instance(family, rng);
      auto pair = sample_product_training_pair(inst.spec.n_in(), inst.spec.n_out(), rng);
      CostSpec cs{rng.below(2) ? CostKind::Global : CostKind::Local, {pair}};
      double shift = grad_theta_shift(inst.spec, cs, inst.ref);
      double fd = grad_theta_fd(inst.spec, cs, inst.ref, h);
      EXPECT_LE(std::abs(shift - fd), std::max(1e-6, 10 * h * h)) << to_string(family) << " " << i;
    }
  }
}

TEST(GradTheta, CommutatorIdentityOnTwoQubits) {
  // V = B R(theta) A on (input, output); dC/dtheta = (i/2) Tr[s [Gamma, B^+ O B]]
  // with s = R A rho A^+ R^+ on the full two-qubit register.
  RngStream rng(31, 0);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix a = sample_haar_unitary(2, rng), b = sample_haar_unitary(2, rng);
    PauliString gamma = sample_nonidentity_pauli(2, rng);
    const double theta = 2 * kPi * rng.uniform();
    NetworkSpec spec = swap_network(1);
    spec.family = Family::GlobalDeep;
    RpqcCircuit c;
    c.gates.push_back(FixedGate{a, {0, 1}});
    c.gates.push_back(RotationGate{gamma, theta});
    c.gates.push_back(FixedGate{b, {0, 1}});
    spec.perceptrons[0].source = c;
    auto pair = sample_product_training_pair(1, 1, rng);
    CostSpec cs{CostKind::Global, {pair}};

    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho.topLeftCorner(2, 2) = pair.input().to_density();
    ComplexMatrix r = rotation_matrix(gamma, theta);
    ComplexMatrix s = r * a * rho * a.adjoint() * r.adjoint();
    ComplexMatrix o = oracle::full_operator(global_observable(pair), 2, {1});
    ComplexMatrix g = gamma.matrix();
    ComplexMatrix ob = b.adjoint() * o * b;
    Complex identity = Complex(0, 0.5) * (s * (g * ob - ob * g)).trace();
    EXPECT_NEAR(identity.imag(), 0.0, 1e-12);
    EXPECT_NEAR(grad_theta_shift(spec, cs, {1, 1, 1, gamma}), identity.real(), 1e-9);
  }
}

// Global perceptrons with Haar unitaries over arbitrary widths.
NetworkSpec random_global(const std::vector<int>& widths, RngStream& rng) {
  NetworkSpec spec;
  spec.layer_widths = widths;
  for (int l = 1; l < int(widths.size()); ++l) {
    std::vector<int> in;
    for (int q = 0; q < widths[std::size_t(l - 1)]; ++q) in.push_back(q);
    for (int j = 0; j < widths[std::size_t(l)]; ++j) {
      spec.perceptrons.push_back({l, j + 1, in, j, sample_haar_unitary(int(in.size()) + 1, rng)});
    }
  }
  return spec;
}

TEST(GradS, ZeroGeneratorsGiveZero) {
  RngStream rng(41, 0);
  NetworkSpec spec = sample_global_deep_unitaries(2, rng);
  std::vector<ComplexMatrix> zeros(2, ComplexMatrix::Zero(8, 8));
  auto flow = make_flow(spec, zeros);
  CostSpec cs{CostKind::Global, {sample_product_training_pair(2, 2, rng)}};
  EXPECT_EQ(grad_s(flow, spec, cs), 0.0);
}

TEST(GradS, MissingGeneratorThrows) {
  RngStream rng(42, 0);
  NetworkSpec spec = sample_global_deep_unitaries(2, rng);
  EXPECT_THROW(make_flow(spec, {ComplexMatrix::Zero(8, 8)}), std::invalid_argument);
  auto flow = sample_flow_generators(spec, rng);
  flow.generators[1] = ComplexMatrix();
  CostSpec cs{CostKind::Global, {sample_product_training_pair(2, 2, rng)}};
  EXPECT_THROW(grad_s(flow, spec, cs), std::invalid_argument);
}

TEST(GradS, SinglePerceptronWithXGenerator) {
  RngStream rng(43, 0);
  for (int trial = 0; trial < 5; ++trial) {
    NetworkSpec spec = sample_global_deep_unitaries(1, rng);
    const ComplexMatrix x_out = PauliString("IX").matrix();  // X on the output qubit
    const ComplexMatrix x_in = PauliString("XI").matrix();
    auto pair = sample_product_training_pair(1, 1, rng);
    CostSpec cs{CostKind::Global, {pair}};
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho.topLeftCorner(2, 2) = pair.input().to_density();
    const ComplexMatrix v = spec.perceptrons[0].unitary();
    const ComplexMatrix sigma = v * rho * v.adjoint();
    const ComplexMatrix o = oracle::full_operator(global_observable(pair), 2, {1});
    for (const auto& h : {x_out, x_in}) {
      // d/ds Tr[O e^{isH} sigma e^{-isH}] at s = 0 = i Tr[O [H, sigma]]
      Complex expected = Complex(0, 1) * (o * (h * sigma - sigma * h)).trace();
      auto flow = make_flow(spec, {h});
      EXPECT_NEAR(grad_s(flow, spec, cs), expected.real(), 1e-12);
    }
  }
}

TEST(GradS, StateVectorMatchesDensityMatrix) {
  RngStream rng(44, 0);
  std::vector<NetworkSpec> specs = {sample_global_deep_unitaries(1, rng), sample_global_deep_unitaries(3, rng),
                                    random_global({2, 2, 1}, rng), random_global({1, 2, 2}, rng),
                                    sample_brick_network(2, 2, rng, 0.3)};
  for (const auto& spec : specs) {
    auto flow = sample_flow_generators(spec, rng);
    CostSpec cs{CostKind::Local, {sample_product_training_pair(spec.n_in(), spec.n_out(), rng),
                                   sample_product_training_pair(spec.n_in(), spec.n_out(), rng)}};
    EXPECT_NEAR(grad_s(flow, spec, cs, GradSMethod::StateVector), grad_s(flow, spec, cs, GradSMethod::DensityMatrix),
                1e-10);
  }
}

TEST(GradS, FiniteDifferenceIsFirstOrder) {
  for (int i = 0; i < 20; ++i) {
    RngStream rng(45, std::uint64_t(i));
    const std::vector<std::vector<int>> shapes = {{1, 1}, {2, 2}, {3, 3}, {2, 1, 2}};
    NetworkSpec spec = random_global(shapes[std::size_t(i) % shapes.size()], rng);
    auto flow = sample_flow_generators(spec, rng);
    CostSpec cs{i % 2 ? CostKind::Global : CostKind::Local,
                {sample_product_training_pair(spec.n_in(), spec.n_out(), rng)}};
    const double g = grad_s(flow, spec, cs);
    const double c0 = cost(apply_flow(spec, flow), cs);
    double err[2];
    const double eps[2] = {1e-3, 1e-4};
    for (int e = 0; e < 2; ++e) {
      const double c1 = cost(apply_flow(spec, update_step(flow, eps[e])), cs);
      err[e] = std::abs((c1 - c0) / eps[e] - g);
    }
    if (err[0] <= 1e-9 && err[1] <= 1e-9) continue;
    const double ratio = err[0] / err[1];
    EXPECT_GE(ratio, 5.0) << i;
    EXPECT_LE(ratio, 20.0) << i;
    // |FD - grad| <= K eps with K read off the larger step.
    const double k = err[0] / eps[0];
    EXPECT_LE(err[1], 2 * k * eps[1]) << i;
  }
}

TEST(GradS, LinearInEachGenerator) {
  RngStream rng(46, 0);
  NetworkSpec spec = sample_global_deep_unitaries(3, rng);
  auto flow = sample_flow_generators(spec, rng);
  CostSpec cs{CostKind::Global, {sample_product_training_pair(3, 3, rng)}};
  for (std::size_t p = 0; p < 3; ++p) {
    auto single = flow;
    for (std::size_t q = 0; q < 3; ++q)
      if (q != p) single.generators[q].setZero();
    auto doubled = single;
    doubled.generators[p] *= 2.0;
    EXPECT_NEAR(grad_s(doubled, spec, cs), 2 * grad_s(single, spec, cs), 1e-12);
  }
  // contributions add up
  double sum = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    auto single = flow;
    for (std::size_t q = 0; q < 3; ++q)
      if (q != p) single.generators[q].setZero();
    sum += grad_s(single, spec, cs);
  }
  EXPECT_NEAR(sum, grad_s(flow, spec, cs), 1e-12);
}

TEST(GradS, GeneratorNormIsSaturated) {
  RngStream rng(47, 0);
  NetworkSpec spec = sample_global_deep_unitaries(3, rng);
  auto flow = sample_flow_generators(spec, rng);
  for (const auto& h : flow.generators) EXPECT_NEAR((h * h).trace().real(), 16.0, 1e-8);
}

TEST(UpdateStep, ZeroStepIsIdentity) {
  RngStream rng(48, 0);
  NetworkSpec spec = sample_global_deep_unitaries(2, rng);
  auto flow = sample_flow_generators(spec, rng);
  auto same = update_step(flow, 0.0);
  EXPECT_EQ(same.step, flow.step);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(same.unitaries[i], flow.unitaries[i]);
}

TEST(UpdateStep, TwoHalfStepsEqualOneStep) {
  RngStream rng(49, 0);
  NetworkSpec spec = sample_global_deep_unitaries(2, rng);
  auto flow = sample_flow_generators(spec, rng);
  auto two = update_step(update_step(flow, 0.05), 0.05);
  auto one = update_step(flow, 0.1);
  EXPECT_NEAR(two.step, 0.1, 1e-15);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(max_abs(two.unitaries[i] - one.unitaries[i]), 1e-10);
}

TEST(UpdateStep, UnitarityDriftAfterThousandSteps) {
  RngStream rng(50, 0);
  NetworkSpec spec = sample_global_deep_unitaries(2, rng);
  auto flow = sample_flow_generators(spec, rng);
  for (int s = 0; s < 1000; ++s) flow = update_step(flow, 0.01);
  for (const auto& u : flow.unitaries) EXPECT_TRUE(is_unitary(u, 1e-8));
  EXPECT_NEAR(flow.step, 10.0, 1e-9);
}

TEST(GradientSuite, SmallRunPassesAndIsDeterministic) {
  const auto a = run_gradient_suite(3, 9, 4);
  const auto b = run_gradient_suite(3, 9, 4);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].passed) << a[i].name << ": " << a[i].detail;
    EXPECT_EQ(a[i].deviation, b[i].deviation);
  }
  EXPECT_THROW(run_gradient_suite(3, 0, 4), std::invalid_argument);
  EXPECT_THROW(run_gradient_suite(3, 4, 4, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace plateau
