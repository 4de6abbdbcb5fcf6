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

// Dense complex linear algebra shared by every other module.
//
// Index convention: a composite index over subsystems with dimensions
// (d_1, ..., d_n) is row-major, i.e. (i_1, ..., i_n) -> ((i_1 d_2 + i_2) d_3 + ...).
// The first tensor factor is the most significant digit. Vectorization of a
// matrix is row-major as well: vec(X)[i * cols + j] = X(i, j).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mapnet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

using Dims = std::vector<std::size_t>;

/// Default row cap for materialized k-copy operators (2^11 rows, 64 MiB per
/// dense complex matrix). The MAPNET_SIZE_CAP environment variable overrides it.
inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 11;

/// Current cap: MAPNET_SIZE_CAP if set to a positive integer, else kDefaultSizeCap.
std::size_t size_cap();

/// base^exp, saturating at SIZE_MAX instead of overflowing.
std::size_t checked_pow(std::size_t base, std::size_t exp);

bool is_hermitian(const CMatrix& a, double tol);
bool is_unitary(const CMatrix& u, double tol);
bool is_psd(const CMatrix& a, double tol);

/// max |a_ij|
double max_abs(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// a ⊗ a ⊗ ... ⊗ a with k factors. Throws InvalidArgumentError for k = 0.
CMatrix tensor_power(const CMatrix& a, std::size_t k);

/// Image of every basis index under the cyclic shift
/// |e_1 e_2 ... e_k> -> |e_k e_1 ... e_{k-1}> on (C^m)^{⊗k}.
std::vector<std::size_t> cyclic_shift_targets(std::size_t m, std::size_t k);

/// The 0/1 matrix of the cyclic shift above. V^(1) is the identity.
/// Throws SizeCapError when m^k exceeds `cap`.
CMatrix cyclic_permutation_operator(std::size_t m, std::size_t k, std::size_t cap = size_cap());

/// Transpose of a single tensor factor of an operator on ⊗_i C^{dims[i]}.
CMatrix partial_transpose(const CMatrix& a, const Dims& dims, std::size_t subsystem);

/// Realignment R_{(i k),(j l)} = a_{(i j),(k l)} of an operator on C^dA ⊗ C^dB,
/// where i, k index A and j, l index B. The result is dA^2 × dB^2.
CMatrix realign(const CMatrix& a, std::size_t dim_a, std::size_t dim_b);

/// Inverse of realign.
CMatrix unrealign(const CMatrix& r, std::size_t dim_a, std::size_t dim_b);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // column i belongs to values[i]
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend. Each
/// eigenvector's first non-negligible component is made real positive, and
/// vectors within a degenerate group are ordered lexicographically, so the
/// result is reproducible run to run. Throws NotHermitianError if
/// max|A - A†| > tol.
EigenDecomposition hermitian_eig(const CMatrix& a, double tol = 1e-9);

/// Hermitian PSD square root. Eigenvalues in [-1e-8, 0) are clamped to zero;
/// anything more negative throws NotPsdError.
CMatrix psd_sqrt(const CMatrix& a);

/// (A + A†) / 2
CMatrix hermitian_part(const CMatrix& a);

/// Sum of singular values. Rectangular input is fine.
double trace_norm(const CMatrix& a);

/// Tr(a b) without forming the product.
Complex trace_of_product(const CMatrix& a, const CMatrix& b);

/// Row-major vec and its inverse.
CVector vec(const CMatrix& x);
CMatrix unvec(const CVector& v, std::size_t rows, std::size_t cols);

/// A validated quantum state with subsystem dimensions.
class DensityMatrix {
 public:
  /// Throws DimensionError if the dims product differs from the matrix size and
  /// InvalidStateError when the trace, hermiticity or PSD check fails.
  DensityMatrix(CMatrix mat, Dims dims);

  /// Single-system state; dims = {rows}.
  explicit DensityMatrix(CMatrix mat);

  const CMatrix& mat() const noexcept { return mat_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }

  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-10;
  static constexpr double kHermitianTol = 1e-12;

 private:
  CMatrix mat_;
  Dims dims_;
};

/// ρ ⊗ σ with concatenated dims.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

CMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem);

/// Requires exactly two subsystems.
CMatrix realign(const DensityMatrix& rho);

}  // namespace mapnet
