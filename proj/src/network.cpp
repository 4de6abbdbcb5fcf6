// Copyright 2026 The mapnet Authors
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

#include "mapnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

constexpr double kPovmTol = 1e-8;

}  // namespace

BinaryPovm binary_povm(const Observable& o) {
  BinaryPovm p;
  p.a_min = o.a_min();
  p.a_max = o.a_max();
  p.a_minus = std::max(0.0, -p.a_min);
  p.a_plus = p.a_minus + p.a_max;
  if (!(p.a_plus > 0.0)) {
    throw DegenerateObservableError("observable has a_plus = " + std::to_string(p.a_plus) +
                                    " <= 0; its shifted spectrum is identically zero");
  }
  // V0² = (a- I + A)/a+ shares A's eigenvectors, so both roots come from the
  // cached decomposition and commute exactly.
  const auto& eig = o.eig();
  EigenDecomposition basis{RVector(eig.values.size()), eig.vectors};
  RVector r0(eig.values.size()), r1(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = std::clamp((p.a_minus + eig.values(i)) / p.a_plus, 0.0, 1.0);
    basis.values(i) = lam;
    r0(i) = std::sqrt(lam);
    r1(i) = std::sqrt(1.0 - lam);
  }
  p.v0 = hermitian_part(eig.vectors * r0.asDiagonal() * eig.vectors.adjoint());
  p.v1 = hermitian_part(eig.vectors * r1.asDiagonal() * eig.vectors.adjoint());
  p.basis = std::move(basis);
  return p;
}

double povm_completeness_error(const BinaryPovm& p) {
  const auto d = p.v0.rows();
  return max_abs(p.v0.adjoint() * p.v0 + p.v1.adjoint() * p.v1 - CMatrix::Identity(d, d));
}

double povm_commutator_error(const BinaryPovm& p) {
  return max_abs(p.v0 * p.v1 - p.v1 * p.v0);
}

CMatrix DilationUnitary::u_a() const {
  const auto d = povm.v0.rows();
  CMatrix u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = povm.v0;
  u.topRightCorner(d, d) = -povm.v1;
  u.bottomLeftCorner(d, d) = povm.v1;
  u.bottomRightCorner(d, d) = povm.v0;
  return u;
}

DilationUnitary dilation_unitary(const BinaryPovm& p) {
  if (p.v0.rows() != p.v0.cols() || p.v0.rows() != p.v1.rows() || p.v1.rows() != p.v1.cols()) {
    throw DimensionError("dilation_unitary: V0 and V1 must be square and the same size");
  }
  const double comm = povm_commutator_error(p);
  if (comm > kPovmTol) {
    throw InconsistentPovmError("V0 and V1 do not commute: max|[V0,V1]| = " +
                                std::to_string(comm));
  }
  EigenDecomposition basis;
  if (p.basis) {
    basis = *p.basis;
  } else {
    basis = hermitian_eig(p.v0, kPovmTol);
    for (Eigen::Index i = 0; i < basis.values.size(); ++i) {
      const double mu = std::clamp(basis.values(i), 0.0, 1.0);
      basis.values(i) = mu * mu;
    }
  }
  const auto n = basis.values.size();
  DilationUnitary d;
  d.povm = p;
  d.uprime.resize(n, n);
  d.lambdas.resize(static_cast<std::size_t>(n));
  d.thetas.resize(static_cast<std::size_t>(n));
  // descending λ: walk the ascending decomposition backwards
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    const double lam = std::clamp(basis.values(src), 0.0, 1.0);
    d.lambdas[static_cast<std::size_t>(k)] = lam;
    d.thetas[static_cast<std::size_t>(k)] = 2.0 * std::acos(std::sqrt(lam));
    d.uprime.row(k) = basis.vectors.col(src).adjoint();
  }
  return d;
}

std::vector<ControlledRotation> controlled_form(const DilationUnitary& d) {
  std::vector<ControlledRotation> out;
  out.reserve(d.thetas.size());
  for (std::size_t k = 0; k < d.thetas.size(); ++k) out.push_back({k, d.thetas[k]});
  return out;
}

CMatrix rotation_block(double lambda) {
  const double c = std::sqrt(std::clamp(lambda, 0.0, 1.0));
  const double s = std::sqrt(std::clamp(1.0 - lambda, 0.0, 1.0));
  // √λ I - i√(1-λ) σ_y, with -iσ_y = [[0,-1],[1,0]]
  CMatrix u(2, 2);
  u << c, -s, s, c;
  return u;
}

CMatrix controlled_unitary(const std::vector<double>& lambdas) {
  const auto d = idx(lambdas.size());
  CMatrix u = CMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const CMatrix b = rotation_block(lambdas[static_cast<std::size_t>(k)]);
    for (Eigen::Index q = 0; q < 2; ++q)
      for (Eigen::Index r = 0; r < 2; ++r) u(q * d + k, r * d + k) = b(q, r);
  }
  return u;
}

CMatrix reassemble_u_a(const std::vector<double>& lambdas, const CMatrix& uprime) {
  if (uprime.rows() != idx(lambdas.size()) || uprime.cols() != idx(lambdas.size())) {
    throw DimensionError("reassemble_u_a: U' does not match the number of controls");
  }
  const CMatrix lift = kron(CMatrix::Identity(2, 2), uprime);
  return lift.adjoint() * controlled_unitary(lambdas) * lift;
}

double p0_exact(const BinaryPovm& p, const CMatrix& sigma) {
  if (sigma.rows() != p.v0.rows() || sigma.cols() != p.v0.cols()) {
    throw DimensionError("p0_exact: state dimension does not match the POVM");
  }
  return trace_of_product(p.v0.adjoint() * p.v0, sigma).real();
}

double visibility_exact(const DilationUnitary& d, const CMatrix& sigma, const CMatrix& uprime) {
  const auto n = d.povm.v0.rows();
  if (sigma.rows() != n || sigma.cols() != n || uprime.rows() != n || uprime.cols() != n) {
    throw DimensionError("visibility_exact: state or U' does not match the network register");
  }
  // U_A (|0><0| ⊗ σ) U_A† has diagonal blocks V0 σ V0† and V1 σ V1†; the
  // register rotation U' acts on both before σ_z ⊗ I is read out.
  const CMatrix& v0 = d.povm.v0;
  const CMatrix& v1 = d.povm.v1;
  const CMatrix top = uprime * (v0 * sigma * v0.adjoint()) * uprime.adjoint();
  const CMatrix bottom = uprime * (v1 * sigma * v1.adjoint()) * uprime.adjoint();
  const Complex v = top.trace() - bottom.trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw Error("visibility has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

double visibility_exact(const DilationUnitary& d, const CMatrix& sigma) {
  const auto n = d.povm.v0.rows();
  if (sigma.rows() != n || sigma.cols() != n) {
    throw DimensionError("visibility_exact: state does not match the network register");
  }
  // U' drops out of the traces; Tr[A σ A†] = Σ (A σ) ∘ conj(A).
  const CMatrix& v0 = d.povm.v0;
  const CMatrix& v1 = d.povm.v1;
  const Complex v = ((v0 * sigma).cwiseProduct(v0.conjugate())).sum() -
                    ((v1 * sigma).cwiseProduct(v1.conjugate())).sum();
  if (std::abs(v.imag()) > 1e-10) {
    throw Error("visibility has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

CheckedVisibility check_visibility(double v) {
  if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-9) {
    throw InvalidVisibilityError("visibility " + std::to_string(v) + " outside [-1, 1]");
  }
  if (std::abs(v) > 1.0) return {std::copysign(1.0, v), true};
  return {v, false};
}

double mean_from_visibility(double v, const BinaryPovm& p) {
  const double vc = check_visibility(v).value;
  return p.a_plus * (vc + 1.0) / 2.0 - p.a_minus;
}

std::pair<double, double> visibility_interval(double c1, double c2, const BinaryPovm& p) {
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(p.a_min), std::abs(p.a_max)));
  if (c1 > c2) throw InvalidArgumentError("visibility_interval: c1 > c2");
  if (c1 < p.a_min - slack || c2 > p.a_max + slack) {
    throw InvalidArgumentError("visibility_interval: bounds must lie within [a_min, a_max]");
  }
  return {2.0 * (c1 + p.a_minus) / p.a_plus - 1.0, 2.0 * (c2 + p.a_minus) / p.a_plus - 1.0};
}

VisibilityEstimate simulate_shots(double p0, std::uint64_t shots, std::uint64_t seed,
                                  std::uint64_t stream) {
  if (!(p0 >= -1e-9 && p0 <= 1.0 + 1e-9)) {
    throw InvalidArgumentError("simulate_shots: p0 = " + std::to_string(p0) + " outside [0, 1]");
  }
  if (shots == 0) throw InvalidArgumentError("simulate_shots: shots must be at least 1");
  const double p = std::clamp(p0, 0.0, 1.0);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::uint64_t zeros = 0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53-bit uniform in [0, 1)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    zeros += u < p ? 1 : 0;
  }
  VisibilityEstimate e;
  e.shots = shots;
  e.seed = seed;
  e.stream = stream;
  e.p0_hat = static_cast<double>(zeros) / static_cast<double>(shots);
  e.v_hat = 2.0 * e.p0_hat - 1.0;
  e.std_error = 2.0 * std::sqrt(e.p0_hat * (1.0 - e.p0_hat) / static_cast<double>(shots));
  return e;
}

}  // namespace mapnet
