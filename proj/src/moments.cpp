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

#include "plateau/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "plateau/errors.hpp"
#include "plateau/parallel.hpp"
#include "plateau/random.hpp"

namespace plateau {

namespace {

double as_double(Eigen::Index d) { return static_cast<double>(d); }

void require_square(const ComplexMatrix& m, Eigen::Index d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                                " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ComplexMatrix ginibre(Eigen::Index d, RngStream& rng) {
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_hermitian(Eigen::Index d, RngStream& rng) {
  ComplexMatrix g = ginibre(d, rng);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_rank_one(Eigen::Index d, RngStream& rng) {
  ComplexVector v = sample_haar_state(d, rng);
  return v * v.adjoint();
}

void check_samples(std::size_t samples) {
  if (samples < 100) throw UsageError("moment estimates need at least 100 samples");
}

}  // namespace

Complex first_moment_exact(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(b, a.rows(), "first_moment_exact");
  return a.trace() * b.trace() / as_double(a.rows());
}

Complex second_moment_exact_chain(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                  const ComplexMatrix& d) {
  const Eigen::Index n = a.rows();
  require_square(b, n, "second_moment_exact_chain");
  require_square(c, n, "second_moment_exact_chain");
  require_square(d, n, "second_moment_exact_chain");
  const double dd = as_double(n);
  if (n < 2) return (a * b * c * d).trace();
  const Complex ta = a.trace(), tb = b.trace(), tc = c.trace(), td = d.trace();
  const Complex tac = (a * c).trace(), tbd = (b * d).trace();
  return (ta * tc * tbd + tac * tb * td) / (dd * dd - 1.0) - (tac * tbd + ta * tb * tc * td) / (dd * (dd * dd - 1.0));
}

Complex second_moment_exact_product(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                    const ComplexMatrix& d) {
  const Eigen::Index n = a.rows();
  require_square(b, n, "second_moment_exact_product");
  require_square(c, n, "second_moment_exact_product");
  require_square(d, n, "second_moment_exact_product");
  const double dd = as_double(n);
  if (n < 2) return a.trace() * b.trace() * c.trace() * d.trace();
  const Complex ta = a.trace(), tb = b.trace(), tc = c.trace(), td = d.trace();
  const Complex tac = (a * c).trace(), tbd = (b * d).trace();
  return (ta * tb * tc * td + tac * tbd) / (dd * dd - 1.0) - (tac * tb * td + ta * tc * tbd) / (dd * (dd * dd - 1.0));
}

ComplexMatrix subsystem_twirl_exact(const ComplexMatrix& a, Eigen::Index d1, Eigen::Index d2) {
  require_square(a, d1 * d2, "subsystem_twirl_exact");
  Subsystems sys({d1, d2});
  return kron(ComplexMatrix(sys.partial_trace(a, {0})), ComplexMatrix(ComplexMatrix::Identity(d2, d2))) /
         as_double(d2);
}

Subsystems::Subsystems(std::vector<Eigen::Index> dims) : dims_(std::move(dims)), strides_(dims_.size()) {
  if (dims_.empty()) throw std::invalid_argument("Subsystems: no subsystems");
  for (std::size_t s = dims_.size(); s-- > 0;) {
    if (dims_[s] < 1) throw std::invalid_argument("Subsystems: dimensions must be positive");
    strides_[s] = total_;
    total_ *= dims_[s];
  }
}

std::vector<Eigen::Index> Subsystems::digits(Eigen::Index index) const {
  std::vector<Eigen::Index> out(dims_.size());
  for (std::size_t s = 0; s < dims_.size(); ++s) out[s] = (index / strides_[s]) % dims_[s];
  return out;
}

ComplexMatrix Subsystems::embed(const ComplexMatrix& op, const std::vector<std::size_t>& subs) const {
  Eigen::Index local = 1;
  std::vector<bool> in(dims_.size(), false);
  for (std::size_t s : subs) {
    if (s >= dims_.size() || in[s]) throw std::invalid_argument("Subsystems::embed: bad subsystem list");
    in[s] = true;
    local *= dims_[s];
  }
  require_square(op, local, "Subsystems::embed");

  std::vector<Eigen::Index> rest_of(total_), local_of(total_);
  for (Eigen::Index i = 0; i < total_; ++i) {
    const auto dg = digits(i);
    Eigen::Index l = 0;
    for (std::size_t s : subs) l = l * dims_[s] + dg[s];
    Eigen::Index r = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s)
      if (!in[s]) r = r * dims_[s] + dg[s];
    local_of[i] = l;
    rest_of[i] = r;
  }
  ComplexMatrix out = ComplexMatrix::Zero(total_, total_);
  for (Eigen::Index i = 0; i < total_; ++i)
    for (Eigen::Index j = 0; j < total_; ++j)
      if (rest_of[i] == rest_of[j]) out(i, j) = op(local_of[i], local_of[j]);
  return out;
}

ComplexMatrix Subsystems::partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& keep) const {
  require_square(m, total_, "Subsystems::partial_trace");
  std::vector<bool> kept(dims_.size(), false);
  for (std::size_t s : keep) {
    if (s >= dims_.size() || kept[s]) throw std::invalid_argument("Subsystems::partial_trace: bad keep list");
    kept[s] = true;
  }
  Eigen::Index out_dim = 1;
  for (std::size_t s = 0; s < dims_.size(); ++s)
    if (kept[s]) out_dim *= dims_[s];

  std::vector<Eigen::Index> k_of(total_), r_of(total_);
  for (Eigen::Index i = 0; i < total_; ++i) {
    const auto dg = digits(i);
    Eigen::Index k = 0, r = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) {
      if (kept[s])
        k = k * dims_[s] + dg[s];
      else
        r = r * dims_[s] + dg[s];
    }
    k_of[i] = k;
    r_of[i] = r;
  }
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index i = 0; i < total_; ++i)
    for (Eigen::Index j = 0; j < total_; ++j)
      if (r_of[i] == r_of[j]) out(k_of[i], k_of[j]) += m(i, j);
  return out;
}

ComplexMatrix bitstring_decomposition_terms(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& v,
                                            Eigen::Index d1, Eigen::Index d2) {
  require_square(a, d1 * d2, "bitstring_decomposition_terms");
  require_square(b, d1 * d2, "bitstring_decomposition_terms");
  require_square(v, d2, "bitstring_decomposition_terms");
  ComplexMatrix terms(d1, d1);
  for (Eigen::Index p = 0; p < d1; ++p) {
    for (Eigen::Index q = 0; q < d1; ++q) {
      // block (q, p) of A and block (p, q) of B
      const ComplexMatrix a_qp = a.block(q * d2, p * d2, d2, d2);
      const ComplexMatrix b_pq = b.block(p * d2, q * d2, d2, d2);
      terms(p, q) = (v * a_qp * v.adjoint() * b_pq).trace();
    }
  }
  return terms;
}

double verify_bitstring_decomposition(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& v,
                                      Eigen::Index d1, Eigen::Index d2) {
  const ComplexMatrix terms = bitstring_decomposition_terms(a, b, v, d1, d2);
  const ComplexMatrix big = kron(ComplexMatrix(ComplexMatrix::Identity(d1, d1)), v);
  const Complex lhs = (big * a * big.adjoint() * b).trace();
  return std::abs(lhs - terms.sum());
}

MomentEstimate mc_haar_integral(const std::function<Complex(const ComplexMatrix&)>& integrand, Eigen::Index dim,
                                std::size_t samples, std::uint64_t seed, std::uint64_t domain, int workers) {
  check_samples(samples);
  const auto xs = parallel_map<Complex>(samples, workers, [&](std::size_t i) {
    RngStream rng(seed, i, domain);
    return integrand(sample_haar_unitary_dim(dim, rng));
  });
  const double n = static_cast<double>(samples);
  const Complex mean = tree_sum(xs) / n;
  const double ss = tree_sum<double>(0, samples, [&](std::size_t i) { return std::norm(xs[i] - mean); });
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n), samples};
}

MatrixMomentEstimate mc_haar_integral_matrix(const std::function<ComplexMatrix(const ComplexMatrix&)>& integrand,
                                             Eigen::Index dim, std::size_t samples, std::uint64_t seed,
                                             std::uint64_t domain, int workers) {
  check_samples(samples);
  const auto xs = parallel_map<ComplexMatrix>(samples, workers, [&](std::size_t i) {
    RngStream rng(seed, i, domain);
    return integrand(sample_haar_unitary_dim(dim, rng));
  });
  const double n = static_cast<double>(samples);
  const ComplexMatrix mean = tree_sum<ComplexMatrix>(0, samples, [&](std::size_t i) { return xs[i]; }) / n;
  const Eigen::MatrixXd ss = tree_sum<Eigen::MatrixXd>(0, samples, [&](std::size_t i) -> Eigen::MatrixXd {
    return (xs[i] - mean).cwiseAbs2();
  });
  return {mean, (ss / (n - 1.0)).cwiseSqrt() / std::sqrt(n), samples};
}

CommutatorInstance sample_commutator_instance(std::array<Eigen::Index, 4> dims, RngStream& rng) {
  const auto [d1, d2, d3, d4] = dims;
  Subsystems sys({d1, d2, d3, d4});
  CommutatorInstance inst;
  inst.dims = dims;
  inst.h = random_hermitian(d1 * d2, rng);
  inst.k = random_hermitian(d1 * d4, rng);
  inst.s = sys.embed(random_hermitian(d1 * d4, rng), {0, 3});
  inst.s_prime = sys.embed(random_hermitian(d1 * d4, rng), {0, 3});
  inst.p = random_rank_one(d3 * d4, rng);
  inst.p_prime = random_rank_one(d3 * d4, rng);
  inst.u = sample_haar_unitary_dim(d1 * d4, rng);
  return inst;
}

MomentEstimate verify_commutator_average_zero(const CommutatorInstance& inst, std::size_t samples, std::uint64_t seed,
                                              int workers) {
  const auto [d1, d2, d3, d4] = inst.dims;
  Subsystems sys({d1, d2, d3, d4});
  const ComplexMatrix h = sys.embed(inst.h, {0, 1});
  const ComplexMatrix k = sys.embed(inst.k, {0, 3});
  const ComplexMatrix u = sys.embed(inst.u, {0, 3});
  const ComplexMatrix p = sys.embed(inst.p, {2, 3});
  const ComplexMatrix pp = sys.embed(inst.p_prime, {2, 3});
  require_square(inst.s, sys.total(), "verify_commutator_average_zero");
  require_square(inst.s_prime, sys.total(), "verify_commutator_average_zero");
  const ComplexMatrix x0 = u * inst.s * u.adjoint();
  const ComplexMatrix y0 = u * (inst.s_prime * k - k * inst.s_prime) * u.adjoint();
  auto integrand = [&](const ComplexMatrix& v) {
    const ComplexMatrix vf = sys.embed(v, {0, 2});
    const ComplexMatrix x = vf * x0 * vf.adjoint();
    const ComplexMatrix m = sys.partial_trace(p * (x * h - h * x), {0, 1});
    const ComplexMatrix b = sys.partial_trace(pp * vf * y0 * vf.adjoint(), {0, 1});
    return Complex((m * b).trace());
  };
  return mc_haar_integral(integrand, d1 * d3, samples, seed, domain::kMoments + 2, workers);
}

ProjectorInstance sample_projector_instance(std::array<Eigen::Index, 4> dims, RngStream& rng) {
  const auto [d1, d2, d3, d4] = dims;
  ProjectorInstance inst;
  inst.dims = dims;
  inst.pi = random_rank_one(d2, rng);
  inst.pi_prime = random_rank_one(d2, rng);
  inst.p_tilde = random_hermitian(d3 * d4, rng);
  inst.p_tilde_prime = random_hermitian(d3 * d4, rng);
  inst.z = random_hermitian(d4, rng);
  inst.z_prime = random_hermitian(d4, rng);
  inst.u = sample_haar_unitary_dim(d1 * d3 * d4, rng);
  return inst;
}

namespace {

void check_rank_one(const ComplexMatrix& pi, Eigen::Index d, const char* what) {
  require_square(pi, d, what);
  if (max_abs(pi * pi - pi) > 1e-10 || max_abs(pi - pi.adjoint()) > 1e-10 || std::abs(pi.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": expected a rank-one projector");
  }
}

}  // namespace

std::pair<Complex, Complex> projector_moments_exact(const ProjectorInstance& inst) {
  const auto [d1, d2, d3, d4] = inst.dims;
  check_rank_one(inst.pi, d2, "projector_moments_exact");
  check_rank_one(inst.pi_prime, d2, "projector_moments_exact");
  Subsystems small({d1, d3, d4});
  const ComplexMatrix pt = small.embed(inst.p_tilde, {1, 2});
  const ComplexMatrix ptp = small.embed(inst.p_tilde_prime, {1, 2});
  const ComplexMatrix z = small.embed(inst.z, {2});
  const ComplexMatrix zp = small.embed(inst.z_prime, {2});
  const ComplexMatrix& u = inst.u;
  require_square(u, small.total(), "projector_moments_exact");
  const ComplexMatrix w = small.partial_trace(pt * u * z * u.adjoint(), {0});
  const ComplexMatrix wp = small.partial_trace(ptp * u * zp * u.adjoint(), {0});

  const double a = as_double(d1), b = as_double(d2);
  const double den = a * a * b * b - 1.0;
  const Complex t = (inst.pi * inst.pi_prime).trace();
  const Complex tr_ww = (w * wp).trace();
  const Complex trw_trw = w.trace() * wp.trace();
  const Complex trace_of_product =
      a * a * b / den * (t - 1.0 / (a * a * b)) * tr_ww + a * b * b / den * (1.0 - t / b) * trw_trw;
  const Complex product_of_traces =
      a * b / den * (t - 1.0 / b) * tr_ww + a * a * b * b / den * (1.0 - t / (a * a * b)) * trw_trw;
  return {trace_of_product, product_of_traces};
}

ProjectorMomentResult verify_projector_moments(const ProjectorInstance& inst, std::size_t samples, std::uint64_t seed,
                                               int workers) {
  const auto [d1, d2, d3, d4] = inst.dims;
  ProjectorMomentResult out;
  std::tie(out.exact_trace_of_product, out.exact_product_of_traces) = projector_moments_exact(inst);

  Subsystems sys({d1, d2, d3, d4});
  const ComplexMatrix u = sys.embed(inst.u, {0, 2, 3});
  const ComplexMatrix w = u * sys.embed(inst.z, {3}) * u.adjoint();
  const ComplexMatrix wp = u * sys.embed(inst.z_prime, {3}) * u.adjoint();
  const ComplexMatrix p = sys.embed(kron(inst.pi, inst.p_tilde), {1, 2, 3});
  const ComplexMatrix pp = sys.embed(kron(inst.pi_prime, inst.p_tilde_prime), {1, 2, 3});
  auto omegas = [&](const ComplexMatrix& v) {
    const ComplexMatrix vf = sys.embed(v, {0, 1});
    return std::make_pair(sys.partial_trace(p * vf * w * vf.adjoint(), {0}),
                          sys.partial_trace(pp * vf * wp * vf.adjoint(), {0}));
  };
  out.mc_trace_of_product = mc_haar_integral(
      [&](const ComplexMatrix& v) {
        const auto [o, op] = omegas(v);
        return Complex((o * op).trace());
      },
      d1 * d2, samples, seed, domain::kMoments + 3, workers);
  out.mc_product_of_traces = mc_haar_integral(
      [&](const ComplexMatrix& v) {
        const auto [o, op] = omegas(v);
        return Complex(o.trace() * op.trace());
      },
      d1 * d2, samples, seed, domain::kMoments + 3, workers);
  return out;
}

namespace {

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CheckResult mc_check(std::string name, const MomentEstimate& est, Complex reference, double k) {
  CheckResult r;
  r.name = std::move(name);
  r.deviation = std::abs(est.value - reference);
  r.tolerance = k * est.std_error + 1e-12;
  r.passed = r.deviation <= r.tolerance;
  r.detail = fmt("stderr=%.3g |ref|=%.6g", est.std_error, std::abs(reference));
  return r;
}

}  // namespace

std::vector<CheckResult> run_moment_suite(std::size_t samples, std::uint64_t seed, int workers, double k) {
  check_samples(samples);
  std::vector<CheckResult> out;
  std::uint64_t id = 0;
  auto instance_rng = [&]() { return RngStream(seed, id++, domain::kInstance); };

  for (Eigen::Index d : {2, 4}) {
    RngStream rng = instance_rng();
    const ComplexMatrix a = ginibre(d, rng), b = ginibre(d, rng), c = ginibre(d, rng), e = ginibre(d, rng);
    const std::string tag = " d=" + std::to_string(d);
    out.push_back(mc_check(
        "haar-first-moment" + tag,
        mc_haar_integral([&](const ComplexMatrix& v) { return Complex((v * a * v.adjoint() * b).trace()); }, d,
                         samples, seed, domain::kMoments + 10 * std::uint64_t(d), workers),
        first_moment_exact(a, b), k));
    out.push_back(mc_check("haar-second-moment-chain" + tag,
                           mc_haar_integral(
                               [&](const ComplexMatrix& v) {
                                 return Complex((v * a * v.adjoint() * b * v * c * v.adjoint() * e).trace());
                               },
                               d, samples, seed, domain::kMoments + 10 * std::uint64_t(d) + 1, workers),
                           second_moment_exact_chain(a, b, c, e), k));
    out.push_back(mc_check("haar-second-moment-product" + tag,
                           mc_haar_integral(
                               [&](const ComplexMatrix& v) {
                                 return Complex((v * a * v.adjoint() * b).trace() *
                                                (v * c * v.adjoint() * e).trace());
                               },
                               d, samples, seed, domain::kMoments + 10 * std::uint64_t(d) + 2, workers),
                           second_moment_exact_product(a, b, c, e), k));
  }

  for (Eigen::Index d2 : {2, 4}) {
    const Eigen::Index d1 = 2;
    RngStream rng = instance_rng();
    const ComplexMatrix a = ginibre(d1 * d2, rng);
    const ComplexMatrix id1 = ComplexMatrix::Identity(d1, d1);
    const auto est = mc_haar_integral_matrix(
        [&](const ComplexMatrix& v) {
          const ComplexMatrix big = kron(id1, v);
          return ComplexMatrix(big * a * big.adjoint());
        },
        d2, samples, seed, domain::kMoments + 100 + std::uint64_t(d2), workers);
    const ComplexMatrix exact = subsystem_twirl_exact(a, d1, d2);
    CheckResult r;
    r.name = "subsystem-twirl d1=2 d2=" + std::to_string(d2);
    r.passed = true;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < exact.rows(); ++i) {
      for (Eigen::Index j = 0; j < exact.cols(); ++j) {
        const double dev = std::abs(est.value(i, j) - exact(i, j));
        const double tol = k * est.std_error(i, j) + 1e-12;
        if (dev > tol) r.passed = false;
        if (dev / tol > worst) {
          worst = dev / tol;
          r.deviation = dev;
          r.tolerance = tol;
        }
      }
    }
    r.detail = fmt("worst entry at %.3g of tolerance over %.0f entries", worst, double(exact.size()));
    out.push_back(r);
  }

  {
    RngStream rng = instance_rng();
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::Index d1 = 2 + rep % 3, d2 = 2 + (rep / 3) % 3;
      worst = std::max(worst, verify_bitstring_decomposition(ginibre(d1 * d2, rng), ginibre(d1 * d2, rng),
                                                             sample_haar_unitary_dim(d2, rng), d1, d2));
    }
    out.push_back({"bitstring-decomposition", worst, 1e-10, worst <= 1e-10, "20 random instances"});
  }

  {
    RngStream rng = instance_rng();
    const auto inst = sample_commutator_instance({2, 2, 2, 2}, rng);
    out.push_back(mc_check("commutator-average-zero", verify_commutator_average_zero(inst, samples, seed, workers),
                           0.0, k));
  }

  {
    RngStream rng = instance_rng();
    const auto inst = sample_projector_instance({2, 2, 2, 2}, rng);
    const auto res = verify_projector_moments(inst, samples, seed, workers);
    out.push_back(mc_check("projector-trace-of-product", res.mc_trace_of_product, res.exact_trace_of_product, k));
    out.push_back(mc_check("projector-product-of-traces", res.mc_product_of_traces, res.exact_product_of_traces, k));
  }
  return out;
}

}  // namespace plateau
