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

#include "mapnet/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

}  // namespace

std::size_t size_cap() {
  if (const char* env = std::getenv("MAPNET_SIZE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSizeCap;
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    r *= base;
  }
  return r;
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_psd(const CMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix tensor_power(const CMatrix& a, std::size_t k) {
  if (k == 0) throw InvalidArgumentError("tensor_power: k must be at least 1");
  CMatrix out = a;
  for (std::size_t i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

std::vector<std::size_t> cyclic_shift_targets(std::size_t m, std::size_t k) {
  if (m == 0 || k == 0) throw InvalidArgumentError("cyclic shift needs m >= 1 and k >= 1");
  const std::size_t total = checked_pow(m, k);
  const std::size_t high = total / m;  // weight of the leading digit
  std::vector<std::size_t> target(total);
  for (std::size_t in = 0; in < total; ++in) {
    // |e_1 ... e_k> -> |e_k e_1 ... e_{k-1}>: the last digit moves to the front.
    target[in] = (in % m) * high + in / m;
  }
  return target;
}

CMatrix cyclic_permutation_operator(std::size_t m, std::size_t k, std::size_t cap) {
  const std::size_t total = checked_pow(m, k);
  if (total > cap) {
    throw SizeCapError("V^(" + std::to_string(k) + ") on C^" + std::to_string(m) + " needs " +
                       std::to_string(total) + " rows, cap is " + std::to_string(cap));
  }
  const auto target = cyclic_shift_targets(m, k);
  CMatrix v = CMatrix::Zero(idx(total), idx(total));
  for (std::size_t in = 0; in < total; ++in) v(idx(target[in]), idx(in)) = 1.0;
  return v;
}

CMatrix partial_transpose(const CMatrix& a, const Dims& dims, std::size_t subsystem) {
  if (subsystem >= dims.size()) {
    throw DimensionError("partial_transpose: subsystem " + std::to_string(subsystem) +
                         " out of range for " + std::to_string(dims.size()) + " subsystems");
  }
  const std::size_t n = product(dims);
  if (a.rows() != idx(n) || a.cols() != idx(n)) {
    throw DimensionError("partial_transpose: matrix does not match dims");
  }
  std::size_t inner = 1;
  for (std::size_t s = subsystem + 1; s < dims.size(); ++s) inner *= dims[s];
  const std::size_t d = dims[subsystem];

  CMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t rd = (r / inner) % d;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t cd = (c / inner) % d;
      // swap the chosen digit between row and column
      const std::size_t r2 = r + (cd - rd) * inner;
      const std::size_t c2 = c + (rd - cd) * inner;
      out(idx(r2), idx(c2)) = a(idx(r), idx(c));
    }
  }
  return out;
}

CMatrix realign(const CMatrix& a, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t n = dim_a * dim_b;
  if (a.rows() != idx(n) || a.cols() != idx(n)) {
    throw DimensionError("realign: matrix is not (dA dB) x (dA dB)");
  }
  CMatrix r(idx(dim_a * dim_a), idx(dim_b * dim_b));
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          r(idx(i * dim_a + k), idx(j * dim_b + l)) = a(idx(i * dim_b + j), idx(k * dim_b + l));
  return r;
}

CMatrix unrealign(const CMatrix& r, std::size_t dim_a, std::size_t dim_b) {
  if (r.rows() != idx(dim_a * dim_a) || r.cols() != idx(dim_b * dim_b)) {
    throw DimensionError("unrealign: matrix is not dA^2 x dB^2");
  }
  const std::size_t n = dim_a * dim_b;
  CMatrix a(idx(n), idx(n));
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          a(idx(i * dim_b + j), idx(k * dim_b + l)) = r(idx(i * dim_a + k), idx(j * dim_b + l));
  return a;
}

EigenDecomposition hermitian_eig(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw NotHermitianError("hermitian_eig: matrix is not square");
  const double asym = max_abs(a - a.adjoint());
  if (asym > tol) {
    throw NotHermitianError("hermitian_eig: max|A - A^dagger| = " + fmt_double(asym));
  }
  const auto n = a.rows();
  EigenDecomposition out;
  out.vectors = hermitian_part(a);
  out.values.resize(n);
  if (n == 0) return out;

  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n),
                     reinterpret_cast<lapack_complex_double*>(out.vectors.data()),
                     static_cast<lapack_int>(n), out.values.data());
  if (info != 0) throw Error("hermitian_eig: zheevd failed with info " + std::to_string(info));

  // Phase fix: first component with magnitude above 1e-10 becomes real positive.
  for (Eigen::Index c = 0; c < n; ++c) {
    auto col = out.vectors.col(c);
    Eigen::Index lead = 0;
    while (lead + 1 < n && std::abs(col(lead)) <= 1e-10) ++lead;
    const Complex z = col(lead);
    if (std::abs(z) > 0.0) col *= std::conj(z) / std::abs(z);
  }

  // Within groups of equal eigenvalues, order vectors lexicographically by
  // (real, imag) of their components, largest first.
  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double tie = 1e-12 * scale;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto lex_greater = [&](Eigen::Index x, Eigen::Index y) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex u = out.vectors(r, x), v = out.vectors(r, y);
      if (std::abs(u.real() - v.real()) > 1e-12) return u.real() > v.real();
      if (std::abs(u.imag() - v.imag()) > 1e-12) return u.imag() > v.imag();
    }
    return false;
  };
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() &&
           out.values(order[end]) - out.values(order[end - 1]) <= tie) {
      ++end;
    }
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(begin),
                     order.begin() + static_cast<std::ptrdiff_t>(end), lex_greater);
    begin = end;
  }
  EigenDecomposition sorted;
  sorted.values.resize(n);
  sorted.vectors.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    sorted.values(c) = out.values(order[static_cast<std::size_t>(c)]);
    sorted.vectors.col(c) = out.vectors.col(order[static_cast<std::size_t>(c)]);
  }
  return sorted;
}

CMatrix psd_sqrt(const CMatrix& a) {
  const auto eig = hermitian_eig(a, 1e-8);
  RVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values(i);
    if (lam < -1e-8) throw NotPsdError("psd_sqrt: eigenvalue " + fmt_double(lam) + " < -1e-8");
    roots(i) = std::sqrt(std::max(lam, 0.0));
  }
  return hermitian_part(eig.vectors * roots.asDiagonal() * eig.vectors.adjoint());
}

CMatrix hermitian_part(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermitian_part: matrix is not square");
  return (a + a.adjoint()) * 0.5;
}

double trace_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_of_product: incompatible shapes");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

CVector vec(const CMatrix& x) {
  CVector v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != idx(rows * cols)) throw DimensionError("unvec: length mismatch");
  CMatrix x(idx(rows), idx(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) x(idx(i), idx(j)) = v(idx(i * cols + j));
  return x;
}

DensityMatrix::DensityMatrix(CMatrix mat, Dims dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (dims_.empty() || product(dims_) != dim()) {
    throw DimensionError("subsystem dims do not multiply to the matrix dimension " +
                         std::to_string(dim()));
  }
  const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_err > kTraceTol) {
    throw InvalidStateError("trace check failed: |Tr(rho) - 1| = " + fmt_double(tr_err));
  }
  const double asym = max_abs(mat_ - mat_.adjoint());
  if (asym > kHermitianTol) {
    throw InvalidStateError("hermitian check failed: max|rho - rho^dagger| = " + fmt_double(asym));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -kPsdTol) {
    throw InvalidStateError("psd check failed: minimum eigenvalue = " + fmt_double(lo));
  }
}

DensityMatrix::DensityMatrix(CMatrix mat)
    : DensityMatrix(mat, Dims{static_cast<std::size_t>(mat.rows())}) {}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.mat(), b.mat()), std::move(dims));
}

CMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  return partial_transpose(rho.mat(), rho.dims(), subsystem);
}

CMatrix realign(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) {
    throw DimensionError("realign: state must have exactly two subsystems");
  }
  return realign(rho.mat(), rho.dims()[0], rho.dims()[1]);
}

}  // namespace mapnet
