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

// Collective observables whose mean on ρ^{⊗k} is the k-th power sum of Θ(ρ).
//
// With V = V^(k) the cyclic shift on (C^m)^{⊗k} and Θ† the dual map,
//
//   Tr[Θ(ρ)^k] = ½ Tr[(V + V†) Θ(ρ)^{⊗k}] = Tr[O ρ^{⊗k}],
//   O = (Θ†)^{⊗k}(½(V + V†)),
//
// where (Θ†)^{⊗k} applies the dual map to each tensor slot independently.
// O is the operator itself; there is no outer trace. If Θ does not preserve
// hermiticity, O is symmetrized and its mean becomes Re Tr[Θ(ρ)^k].

#pragma once

#include <cstddef>
#include <utility>

#include "mapnet/linear_map.hpp"
#include "mapnet/tensor.hpp"

namespace mapnet {

/// Hermitian operator with its exact spectrum, ready for network synthesis.
class Observable {
 public:
  /// Diagonalizes `mat` (must be Hermitian within 1e-9).
  explicit Observable(CMatrix mat, std::size_t copies = 1, bool off_contract = false);

  const CMatrix& mat() const noexcept { return mat_; }
  const EigenDecomposition& eig() const noexcept { return eig_; }
  double a_min() const noexcept { return eig_.values(0); }
  double a_max() const noexcept { return eig_.values(eig_.values.size() - 1); }
  std::size_t copies() const noexcept { return copies_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }

  /// Set when the source map was not hermiticity preserving; the mean is then
  /// only the real part of the power sum.
  bool off_contract() const noexcept { return off_contract_; }

 private:
  CMatrix mat_;
  EigenDecomposition eig_;
  std::size_t copies_;
  bool off_contract_;
};

/// Applies `m` to tensor slot `slot` of an operator on ⊗_i C^{dims[i]}.
/// dims[slot] must equal m.src_dim(); the slot's dimension becomes m.dst_rows().
CMatrix apply_on_slot(const LinearMap& m, const CMatrix& x, const Dims& dims, std::size_t slot);

/// The symmetrized operator (Θ†)^{⊗k}(½(V^(k) + V^(k)†)) without its spectrum.
/// Throws SizeCapError if either m^k or n^k exceeds cap (m = output, n = input
/// dimension of Θ), and DimensionError if Θ's output is not square.
CMatrix observable_operator(const LinearMap& theta, std::size_t k, std::size_t cap = size_cap());

/// observable_operator plus its eigendecomposition.
Observable collective_observable(const LinearMap& theta, std::size_t k,
                                 std::size_t cap = size_cap());

/// Tr[Θ(ρ)^k] by repeated multiplication. Throws Error if the imaginary
/// residue exceeds 1e-9 relative to the magnitude.
double moment_exact(const LinearMap& theta, const DensityMatrix& rho, std::size_t k);

/// Tr[O ρ^{⊗k}] with O from observable_operator.
double moment_via_observable(const LinearMap& theta, const DensityMatrix& rho, std::size_t k,
                             std::size_t cap = size_cap());

/// (a_min, a_max), the extreme eigenvalues.
std::pair<double, double> spectrum_bounds(const Observable& o);

}  // namespace mapnet
