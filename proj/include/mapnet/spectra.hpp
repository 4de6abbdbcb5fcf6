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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mapnet {

/// Power sums α_1..α_K of some Hermitian matrix, with optional per-moment
/// standard errors (zero in exact mode).
struct MomentVector {
  std::vector<double> values;
  std::vector<double> std_errors;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  double residual = 0.0;            // max_k |Σ λ_i^k - α_k|
};

/// Tolerances for turning polynomial roots into a real spectrum.
///
/// Companion-matrix roots of an exactly μ-fold root split into a small ring of
/// radius ~(coefficient noise)^{1/μ}, mostly off the real axis. Roots joined
/// through non-real members are treated as one such group. The group is
/// accepted when its imaginary extent stays under
/// max(tol_imag, coeff_tol^{1/μ}) times the root scale. Members are then
/// replaced by the polished group centre.
struct RootOptions {
  double tol_imag = 1e-6;
  double coeff_tol = 1e-9;
};

/// Tolerances for moments carrying statistical noise of size `moment_sigma`.
RootOptions noisy_root_options(double moment_sigma);

/// Elementary symmetric polynomials e_1..e_m from power sums α_1..α_m using
/// k e_k = Σ_{i=1..k} (-1)^{i-1} e_{k-i} α_i. Throws InvalidArgumentError
/// unless moments.size() == m.
std::vector<double> newton_girard(std::span<const double> moments, std::size_t m);

/// Monic polynomial x^m + c_1 x^{m-1} + ... + c_m with c_k = (-1)^k e_k.
std::vector<double> characteristic_coefficients(std::span<const double> e);

/// Real roots (ascending) of x^m + c_1 x^{m-1} + ... + c_m via the companion
/// matrix. Throws ReconstructionError carrying every root when some root is
/// not real within the tolerances.
std::vector<double> roots_real(std::span<const double> monic_tail, const RootOptions& opts = {});

/// newton_girard -> roots_real, eigenvalues sorted descending.
Spectrum spectrum_from_moments(std::span<const double> moments, std::size_t m,
                               const RootOptions& opts = {});
Spectrum spectrum_from_moments(const MomentVector& moments, std::size_t m,
                               const RootOptions& opts = {});

/// max_k |Σ λ_i^k - α_k| over the supplied moments.
double moment_residual(std::span<const double> eigenvalues, std::span<const double> moments);

/// Σ_i sqrt(γ_i). γ_i in [-negative_tol, 0) and γ_i below
/// zero_floor × max γ count as zero. Throws InvalidGammaError for γ_i < -negative_tol.
double trace_norm_from_gammas(std::span<const double> gammas, double negative_tol = 1e-6,
                              double zero_floor = 1e-14);

}  // namespace mapnet
