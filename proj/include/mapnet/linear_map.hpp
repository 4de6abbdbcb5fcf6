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

// Linear maps on operator spaces, stored as superoperators.
//
// A LinearMap takes n×n matrices to r×c matrices. Its superoperator S is an
// (r c) × n^2 matrix with vec(M(X)) = S vec(X), using the row-major vec of
// tensor.hpp. Under that convention X ↦ K X K† has superoperator K ⊗ conj(K).

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mapnet/tensor.hpp"

namespace mapnet {

/// Θ(X) = Σ_j η_j K_j X K_j† with real weights.
struct KrausPairDecomposition {
  std::vector<double> eta;
  std::vector<CMatrix> ops;
};

class LinearMap {
 public:
  /// Throws DimensionError unless superop is (dst_rows dst_cols) × src_dim^2.
  LinearMap(std::size_t src_dim, std::size_t dst_rows, std::size_t dst_cols, CMatrix superop);

  std::size_t src_dim() const noexcept { return src_dim_; }
  std::size_t dst_rows() const noexcept { return dst_rows_; }
  std::size_t dst_cols() const noexcept { return dst_cols_; }
  bool square_output() const noexcept { return dst_rows_ == dst_cols_; }
  const CMatrix& superop() const noexcept { return superop_; }

  /// Kraus-pair form this map was built from, if any.
  const std::optional<KrausPairDecomposition>& kraus() const noexcept { return kraus_; }
  void set_kraus(KrausPairDecomposition k) { kraus_ = std::move(k); }

 private:
  std::size_t src_dim_;
  std::size_t dst_rows_;
  std::size_t dst_cols_;
  CMatrix superop_;
  std::optional<KrausPairDecomposition> kraus_;
};

/// Σ_j η_j K_j ⊗ conj(K_j). Throws InvalidArgumentError for an empty list and
/// DimensionError when the K_j differ in shape.
LinearMap map_from_kraus_pairs(const KrausPairDecomposition& d);

/// Throws DimensionError unless x is src_dim × src_dim.
CMatrix apply(const LinearMap& m, const CMatrix& x);

/// Choi matrix Σ_ij |i><j| ⊗ M(|i><j|).
CMatrix choi_matrix(const LinearMap& m);

/// True iff the Choi matrix is Hermitian within tol. Rectangular output is
/// never hermiticity preserving.
bool hermiticity_preserving(const LinearMap& m, double tol = 1e-10);

/// Choi matrix is PSD within tol. Diagnostic only.
bool completely_positive(const LinearMap& m, double tol = 1e-10);

/// Dual map under the bilinear pairing Tr[Y M(X)] = Tr[N(Y) X]. For Kraus
/// pairs this is Y ↦ Σ η_j K_j† Y K_j. Requires square output.
LinearMap dual_map(const LinearMap& m);

/// Entrywise conjugate coefficients: M*(X) = conj(M(conj(X))).
LinearMap conjugate_map(const LinearMap& m);

/// T ∘ M* ∘ T, i.e. X ↦ [M(X†)]†. On Hermitian X this is M(X)†.
/// The result maps n×n to c×r.
LinearMap primed_map(const LinearMap& m);

/// A ∘ B. Throws DimensionError unless B's output is A.src_dim square.
LinearMap compose(const LinearMap& a, const LinearMap& b);

/// I ⊗ Λ acting on C^dim_a ⊗ (Λ's input space). Λ must have square output.
LinearMap extend_with_identity(const LinearMap& lambda, std::size_t dim_a);

/// L_R acting on operators of C^n ⊗ C^n with the multiplication convention
/// L_R(X ⊗ Y) = R(X) · R′(Y), extended linearly. Output is dst_rows × dst_rows,
/// and for a state ρ, L_R(ρ ⊗ ρ) = R(ρ) R(ρ)†.
LinearMap pair_product_map(const LinearMap& r);

/// True iff dual(M)(I) = I within tol (M preserves traces).
bool trace_preserving(const LinearMap& m, double tol = 1e-10);

// Built-in maps.

LinearMap identity_map(std::size_t d);
LinearMap transpose_map(std::size_t d);
/// X ↦ Tr(X) I - X, built from Kraus pairs.
LinearMap reduction_map(std::size_t d);

/// Rearranges the four indices (i, j, k, l) of a_{(i j),(k l)} on C^dA ⊗ C^dB
/// (i, k over A; j, l over B). perm[p] names which input index lands in output
/// slot p; slots 0,1 form the output row and 2,3 the output column. For
/// example {0,2,1,3} is realignment and {0,3,2,1} is the partial transpose on B.
/// Throws InvalidArgumentError unless perm is a permutation of {0,1,2,3}.
LinearMap index_permutation_map(const std::array<int, 4>& perm, std::size_t dim_a,
                                std::size_t dim_b);

/// index_permutation_map({0,2,1,3}, dA, dB).
LinearMap realignment_map(std::size_t dim_a, std::size_t dim_b);

/// Named maps: "identity", "transpose", "reduction" (on C^{Π dims}),
/// "realignment" (dims must have two entries) and "index_permutation(a,b,c,d)".
/// Throws InvalidArgumentError for unknown names.
LinearMap builtin_map(std::string_view name, const Dims& dims);

}  // namespace mapnet
