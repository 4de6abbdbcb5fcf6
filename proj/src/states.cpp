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

#include "mapnet/states.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CMatrix gaussian_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(idx(n), idx(n));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

DensityMatrix pure_state(const CVector& psi, Dims dims) {
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgumentError("pure_state: zero vector");
  const CVector u = psi / norm;
  return DensityMatrix(hermitian_part(u * u.adjoint()), std::move(dims));
}

DensityMatrix maximally_mixed(const Dims& dims) {
  const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  return DensityMatrix(CMatrix::Identity(idx(n), idx(n)) / static_cast<double>(n), dims);
}

DensityMatrix bell_state(std::size_t index) {
  CVector psi = CVector::Zero(4);
  switch (index) {
    case 0: psi(0) = 1.0; psi(3) = 1.0; break;
    case 1: psi(0) = 1.0; psi(3) = -1.0; break;
    case 2: psi(1) = 1.0; psi(2) = 1.0; break;
    case 3: psi(1) = 1.0; psi(2) = -1.0; break;
    default: throw InvalidArgumentError("bell index must be 0..3");
  }
  return pure_state(psi, {2, 2});
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgumentError("werner p = " + std::to_string(p) + " outside [0, 1]");
  }
  const CMatrix singlet = bell_state(3).mat();
  return DensityMatrix(p * singlet + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0, {2, 2});
}

DensityMatrix isotropic_state(double fidelity, std::size_t d) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidArgumentError("isotropic F = " + std::to_string(fidelity) + " outside [0, 1]");
  }
  if (d < 2) throw InvalidArgumentError("isotropic state needs d >= 2");
  CVector phi = CVector::Zero(idx(d * d));
  for (std::size_t i = 0; i < d; ++i) phi(idx(i * d + i)) = 1.0;
  phi /= std::sqrt(static_cast<double>(d));
  const CMatrix proj = phi * phi.adjoint();
  const CMatrix id = CMatrix::Identity(idx(d * d), idx(d * d));
  const double dd = static_cast<double>(d * d);
  return DensityMatrix(hermitian_part(fidelity * proj + (1.0 - fidelity) * (id - proj) / (dd - 1.0)),
                       {d, d});
}

DensityMatrix random_state(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (n == 0) throw InvalidArgumentError("random_state: empty dimensions");
  const CMatrix g = gaussian_matrix(n, seed);
  CMatrix rho = hermitian_part(g * g.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho), dims);
}

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  return hermitian_part(gaussian_matrix(n, seed));
}

}  // namespace mapnet
