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

// Single-qubit readout of an observable's mean.
//
// For an observable A with spectrum in [a_min, a_max]:
//
//   a- = max(0, -a_min),  a+ = a- + a_max
//   V0 = sqrt((a- I + A) / a+),  V1 = sqrt(I - V0²)
//   U_A = [[V0, -V1], [V1, V0]] = I₂ ⊗ V0 - iσ_y ⊗ V1
//
// Acting on |0><0| ⊗ σ, the control qubit reads 0 with p0 = Tr(V0² σ), so
// <A>_σ = a+ p0 - a- = a+ (v + 1)/2 - a- with visibility v = 2 p0 - 1.
// Diagonalizing V0 with U' = Σ_k |k><φ_k| turns the conjugated unitary into
// Σ_k R_y(θ_k) ⊗ |k><k|, a rotation of the control qubit uniformly controlled
// by the system register.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mapnet/observable.hpp"
#include "mapnet/tensor.hpp"

namespace mapnet {

struct BinaryPovm {
  CMatrix v0;
  CMatrix v1;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double a_min = 0.0;
  double a_max = 0.0;
  /// Common eigenbasis of V0 and V1 (columns) with the eigenvalues of V0²,
  /// ascending. Filled by binary_povm; dilation_unitary diagonalizes V0 when
  /// it is absent.
  std::optional<EigenDecomposition> basis;
};

/// Throws DegenerateObservableError when a_plus <= 0.
BinaryPovm binary_povm(const Observable& o);

/// max|V0†V0 + V1†V1 - I|
double povm_completeness_error(const BinaryPovm& p);
/// max|[V0, V1]|
double povm_commutator_error(const BinaryPovm& p);

struct ControlledRotation {
  std::size_t control;  // basis state |k> of the diagonalized register
  double theta;         // R_y angle on the control qubit, radians
};

struct DilationUnitary {
  BinaryPovm povm;
  /// Σ_k |k><φ_k|, rows are the conjugated eigenvectors of V0.
  CMatrix uprime;
  /// Eigenvalues of V0² in descending order; sqrt(λ_k) are those of V0.
  std::vector<double> lambdas;
  /// θ_k = 2 arccos(sqrt(λ_k)).
  std::vector<double> thetas;

  /// I₂ ⊗ V0 - iσ_y ⊗ V1 as a dense 2d × 2d matrix.
  CMatrix u_a() const;
  std::size_t dim() const noexcept { return static_cast<std::size_t>(povm.v0.rows()); }
};

/// Throws InconsistentPovmError if [V0, V1] exceeds 1e-8.
DilationUnitary dilation_unitary(const BinaryPovm& p);

/// One entry per control state, in the order of `lambdas`.
std::vector<ControlledRotation> controlled_form(const DilationUnitary& d);

/// √λ I - i√(1-λ) σ_y, i.e. R_y(θ) with θ = 2 arccos √λ.
CMatrix rotation_block(double lambda);

/// Σ_k U_k ⊗ |k><k| with the qubit as the leading tensor factor.
CMatrix controlled_unitary(const std::vector<double>& lambdas);

/// (I₂ ⊗ U')† (Σ_k U_k ⊗ |k><k|) (I₂ ⊗ U'), which equals U_A.
CMatrix reassemble_u_a(const std::vector<double>& lambdas, const CMatrix& uprime);

/// p0 = Tr(V0†V0 σ).
double p0_exact(const BinaryPovm& p, const CMatrix& sigma);

/// Tr[(σ_z ⊗ I)(I ⊗ U') U_A (|0><0| ⊗ σ) U_A† (I ⊗ U')†] using `uprime`.
/// Throws DimensionError on size mismatch and Error if the result is not real
/// within 1e-10.
double visibility_exact(const DilationUnitary& d, const CMatrix& sigma, const CMatrix& uprime);
double visibility_exact(const DilationUnitary& d, const CMatrix& sigma);

/// Visibility clamped into [-1, 1]; `clamped` is set when |v| was in
/// (1, 1 + 1e-9]. Throws InvalidVisibilityError beyond that.
struct CheckedVisibility {
  double value;
  bool clamped;
};
CheckedVisibility check_visibility(double v);

/// a+ (v + 1)/2 - a-.
double mean_from_visibility(double v, const BinaryPovm& p);

/// Visibility window matching c1 <= <A> <= c2. Throws InvalidArgumentError if
/// c1 > c2 or either bound lies outside [a_min, a_max].
std::pair<double, double> visibility_interval(double c1, double c2, const BinaryPovm& p);

struct VisibilityEstimate {
  double p0_hat = 0.0;
  double v_hat = 0.0;
  std::uint64_t shots = 0;
  double std_error = 0.0;  // on v_hat
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Bernoulli(p0) sampling of the control qubit. (seed, stream) selects an
/// independent mt19937_64 stream, so identical arguments give identical
/// estimates. Throws InvalidArgumentError if p0 is outside [0, 1] by more than
/// 1e-9 or shots is 0.
VisibilityEstimate simulate_shots(double p0, std::uint64_t shots, std::uint64_t seed,
                                  std::uint64_t stream = 0);

}  // namespace mapnet
