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

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "plateau/check.hpp"
#include "plateau/linalg.hpp"
#include "plateau/rng.hpp"

namespace plateau {

struct MomentEstimate {
  Complex value = 0.0;
  double std_error = 0.0;  // sqrt(sum |x - mean|^2 / (N - 1)) / sqrt(N)
  std::size_t samples = 0;
};

struct MatrixMomentEstimate {
  ComplexMatrix value;
  Eigen::MatrixXd std_error;
  std::size_t samples = 0;
};

// Haar averages over U(d).
Complex first_moment_exact(const ComplexMatrix& a, const ComplexMatrix& b);
Complex second_moment_exact_chain(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                  const ComplexMatrix& d);
Complex second_moment_exact_product(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                    const ComplexMatrix& d);
// Average of (1 (x) V) A (1 (x) V^dagger) with V on the second factor:
// Tr_2[A] (x) 1 / d2.
ComplexMatrix subsystem_twirl_exact(const ComplexMatrix& a, Eigen::Index d1, Eigen::Index d2);

// Tensor product of subsystems with arbitrary dimensions. Subsystem 0 is the
// most significant factor (plain kron order).
class Subsystems {
 public:
  explicit Subsystems(std::vector<Eigen::Index> dims);

  Eigen::Index total() const { return total_; }
  Eigen::Index dim(std::size_t s) const { return dims_[s]; }
  std::size_t count() const { return dims_.size(); }

  // `op` acts on `subs` in the listed order (first listed = most significant).
  ComplexMatrix embed(const ComplexMatrix& op, const std::vector<std::size_t>& subs) const;
  // Trace out everything but `keep` (kept in ascending subsystem order).
  ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& keep) const;

 private:
  std::vector<Eigen::Index> digits(Eigen::Index index) const;

  std::vector<Eigen::Index> dims_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index total_ = 1;
};

// terms(p, q) = Tr[V A_qp V^dagger B_pq], p, q running over the first factor,
// with A_qp = Tr_1[(|p><q| (x) 1) A] and B_pq = Tr_1[(|q><p| (x) 1) B].
ComplexMatrix bitstring_decomposition_terms(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& v,
                                            Eigen::Index d1, Eigen::Index d2);
// |Tr[(1 (x) V) A (1 (x) V^dagger) B] - sum of terms|.
double verify_bitstring_decomposition(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& v,
                                      Eigen::Index d1, Eigen::Index d2);

// Per-sample streams: sample i draws from RngStream(seed, i, domain).
MomentEstimate mc_haar_integral(const std::function<Complex(const ComplexMatrix&)>& integrand, Eigen::Index dim,
                                std::size_t samples, std::uint64_t seed, std::uint64_t domain, int workers = 1);
MatrixMomentEstimate mc_haar_integral_matrix(const std::function<ComplexMatrix(const ComplexMatrix&)>& integrand,
                                             Eigen::Index dim, std::size_t samples, std::uint64_t seed,
                                             std::uint64_t domain, int workers = 1);

// Operators for the commutator average over H1 (x) H2 (x) H3 (x) H4.
// h on (1,2), k on (1,4), p and p_prime on (3,4), u on (1,4); s and s_prime
// are full-space operators. V is integrated over (1,3).
struct CommutatorInstance {
  std::array<Eigen::Index, 4> dims{2, 2, 2, 2};
  ComplexMatrix h, k, s, s_prime, p, p_prime, u;
};

// Random instance with s and s_prime supported on H1 (x) H4 (identity on
// H2 and H3), the shape in which the identity holds.
CommutatorInstance sample_commutator_instance(std::array<Eigen::Index, 4> dims, RngStream& rng);

MomentEstimate verify_commutator_average_zero(const CommutatorInstance& inst, std::size_t samples, std::uint64_t seed,
                                  int workers = 1);

// pi, pi_prime rank-one projectors on H2; p_tilde(_prime) on (3,4);
// z(_prime) on H4; u on (1,3,4). V is integrated over (1,2).
struct ProjectorInstance {
  std::array<Eigen::Index, 4> dims{2, 2, 2, 2};
  ComplexMatrix pi, pi_prime, p_tilde, p_tilde_prime, z, z_prime, u;
};

ProjectorInstance sample_projector_instance(std::array<Eigen::Index, 4> dims, RngStream& rng);

struct ProjectorMomentResult {
  MomentEstimate mc_trace_of_product;  // Tr_1[Omega Omega']
  MomentEstimate mc_product_of_traces;  // Tr_1[Omega] Tr[Omega']
  Complex exact_trace_of_product = 0.0;
  Complex exact_product_of_traces = 0.0;
};

// Closed forms only (no sampling).
std::pair<Complex, Complex> projector_moments_exact(const ProjectorInstance& inst);
ProjectorMomentResult verify_projector_moments(const ProjectorInstance& inst, std::size_t samples, std::uint64_t seed,
                                   int workers = 1);

// Every moment check at the given sample count; MC gates use k stderr.
std::vector<CheckResult> run_moment_suite(std::size_t samples, std::uint64_t seed, int workers, double k = 4.0);

}  // namespace plateau
