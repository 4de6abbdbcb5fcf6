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

#include "mapnet/linear_map.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

LinearMap::LinearMap(std::size_t src_dim, std::size_t dst_rows, std::size_t dst_cols,
                     CMatrix superop)
    : src_dim_(src_dim), dst_rows_(dst_rows), dst_cols_(dst_cols), superop_(std::move(superop)) {
  if (superop_.rows() != idx(dst_rows * dst_cols) || superop_.cols() != idx(src_dim * src_dim)) {
    throw DimensionError("superoperator must be " + std::to_string(dst_rows * dst_cols) + " x " +
                         std::to_string(src_dim * src_dim));
  }
}

LinearMap map_from_kraus_pairs(const KrausPairDecomposition& d) {
  if (d.ops.empty() || d.ops.size() != d.eta.size()) {
    throw InvalidArgumentError("Kraus-pair decomposition needs matching, non-empty eta and K lists");
  }
  const auto rows = d.ops.front().rows();
  const auto cols = d.ops.front().cols();
  CMatrix s = CMatrix::Zero(rows * rows, cols * cols);
  for (std::size_t j = 0; j < d.ops.size(); ++j) {
    const CMatrix& k = d.ops[j];
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionError("Kraus operators must all have the same shape");
    }
    s += d.eta[j] * kron(k, k.conjugate());
  }
  LinearMap m(static_cast<std::size_t>(cols), static_cast<std::size_t>(rows),
              static_cast<std::size_t>(rows), std::move(s));
  m.set_kraus(d);
  return m;
}

CMatrix apply(const LinearMap& m, const CMatrix& x) {
  if (x.rows() != idx(m.src_dim()) || x.cols() != idx(m.src_dim())) {
    throw DimensionError("apply: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", map expects " +
                         std::to_string(m.src_dim()) + "x" + std::to_string(m.src_dim()));
  }
  return unvec(m.superop() * vec(x), m.dst_rows(), m.dst_cols());
}

CMatrix choi_matrix(const LinearMap& m) {
  const std::size_t n = m.src_dim();
  const auto r = idx(m.dst_rows()), c = idx(m.dst_cols());
  CMatrix choi = CMatrix::Zero(idx(n) * r, idx(n) * c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // M(|i><j|) is column i*n+j of the superoperator
      const CMatrix block = unvec(m.superop().col(idx(i * n + j)), m.dst_rows(), m.dst_cols());
      choi.block(idx(i) * r, idx(j) * c, r, c) = block;
    }
  }
  return choi;
}

bool hermiticity_preserving(const LinearMap& m, double tol) {
  if (!m.square_output()) return false;
  return is_hermitian(choi_matrix(m), tol);
}

bool completely_positive(const LinearMap& m, double tol) {
  if (!m.square_output()) return false;
  return is_psd(choi_matrix(m), tol);
}

LinearMap dual_map(const LinearMap& m) {
  if (!m.square_output()) {
    throw DimensionError("dual_map: only square-output maps have a dual in this representation");
  }
  const std::size_t n = m.src_dim(), r = m.dst_rows();
  const CMatrix& s = m.superop();
  // N(Y)(j,i) = Σ_ab S(a r + b, i n + j) Y(b,a)
  CMatrix d(idx(n * n), idx(r * r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          d(idx(j * n + i), idx(b * r + a)) = s(idx(a * r + b), idx(i * n + j));
  LinearMap out(r, n, n, std::move(d));
  if (m.kraus()) {
    KrausPairDecomposition k{m.kraus()->eta, {}};
    for (const auto& op : m.kraus()->ops) k.ops.push_back(op.adjoint());
    out.set_kraus(std::move(k));
  }
  return out;
}

LinearMap conjugate_map(const LinearMap& m) {
  LinearMap out(m.src_dim(), m.dst_rows(), m.dst_cols(), m.superop().conjugate());
  if (m.kraus()) {
    KrausPairDecomposition k{m.kraus()->eta, {}};
    for (const auto& op : m.kraus()->ops) k.ops.push_back(op.conjugate());
    out.set_kraus(std::move(k));
  }
  return out;
}

LinearMap primed_map(const LinearMap& m) {
  const std::size_t n = m.src_dim(), r = m.dst_rows(), c = m.dst_cols();
  const CMatrix conj_s = conjugate_map(m).superop();
  // T on the input swaps (i,j); M* acts; T on the r×c output swaps (a,b).
  CMatrix p(idx(c * r), idx(n * n));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          p(idx(b * r + a), idx(j * n + i)) = conj_s(idx(a * c + b), idx(i * n + j));
  return LinearMap(n, c, r, std::move(p));
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (b.dst_rows() != a.src_dim() || b.dst_cols() != a.src_dim()) {
    throw DimensionError("compose: output of the inner map does not match the outer map's input");
  }
  return LinearMap(b.src_dim(), a.dst_rows(), a.dst_cols(), a.superop() * b.superop());
}

LinearMap extend_with_identity(const LinearMap& lambda, std::size_t dim_a) {
  if (!lambda.square_output()) {
    throw DimensionError("extend_with_identity: map must have square output");
  }
  const std::size_t n = lambda.src_dim(), np = lambda.dst_rows();
  const std::size_t in_dim = dim_a * n, out_dim = dim_a * np;
  const CMatrix& s = lambda.superop();
  CMatrix ext = CMatrix::Zero(idx(out_dim * out_dim), idx(in_dim * in_dim));
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t c = 0; c < dim_a; ++c)
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t q = 0; q < np; ++q) {
          const std::size_t row = (a * np + p) * out_dim + (c * np + q);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              const std::size_t col = (a * n + i) * in_dim + (c * n + j);
              ext(idx(row), idx(col)) = s(idx(p * np + q), idx(i * n + j));
            }
        }
  return LinearMap(in_dim, out_dim, out_dim, std::move(ext));
}

LinearMap pair_product_map(const LinearMap& r) {
  const std::size_t n = r.src_dim(), rows = r.dst_rows(), cols = r.dst_cols();
  const LinearMap rp = primed_map(r);  // n×n -> cols×rows
  const CMatrix& s = r.superop();
  const CMatrix& sp = rp.superop();
  const std::size_t nn = n * n;
  // L(Z)(a,e) = Σ_b Σ_{ijkl} S(a cols + b, i n + j) S'(b rows + e, k n + l) Z((i,k),(j,l))
  CMatrix l = CMatrix::Zero(idx(rows * rows), idx(nn * nn));
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t e = 0; e < rows; ++e) {
      const std::size_t out = a * rows + e;
      for (std::size_t b = 0; b < cols; ++b) {
        const auto left = s.row(idx(a * cols + b));
        const auto right = sp.row(idx(b * rows + e));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const Complex lv = left(idx(i * n + j));
            if (lv == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t q = 0; q < n; ++q) {
                const std::size_t in = (i * n + k) * nn + (j * n + q);
                l(idx(out), idx(in)) += lv * right(idx(k * n + q));
              }
          }
      }
    }
  return LinearMap(nn, rows, rows, std::move(l));
}

bool trace_preserving(const LinearMap& m, double tol) {
  if (!m.square_output()) return false;
  const CMatrix id = CMatrix::Identity(idx(m.dst_rows()), idx(m.dst_rows()));
  const CMatrix pulled = mapnet::apply(dual_map(m), id);
  return max_abs(pulled - CMatrix::Identity(idx(m.src_dim()), idx(m.src_dim()))) <= tol;
}

LinearMap identity_map(std::size_t d) {
  return LinearMap(d, d, d, CMatrix::Identity(idx(d * d), idx(d * d)));
}

LinearMap transpose_map(std::size_t d) {
  CMatrix s = CMatrix::Zero(idx(d * d), idx(d * d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(idx(j * d + i), idx(i * d + j)) = 1.0;
  return LinearMap(d, d, d, std::move(s));
}

LinearMap reduction_map(std::size_t d) {
  // Tr(X) I = Σ_ij |i><j| X |j><i|, minus the identity pair.
  KrausPairDecomposition k;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(idx(d), idx(d));
      e(idx(i), idx(j)) = 1.0;
      k.eta.push_back(1.0);
      k.ops.push_back(std::move(e));
    }
  k.eta.push_back(-1.0);
  k.ops.push_back(CMatrix::Identity(idx(d), idx(d)));
  return map_from_kraus_pairs(k);
}

LinearMap index_permutation_map(const std::array<int, 4>& perm, std::size_t dim_a,
                                std::size_t dim_b) {
  std::array<int, 4> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{0, 1, 2, 3}) {
    throw InvalidArgumentError("index permutation must be a permutation of 0..3");
  }
  const std::array<std::size_t, 4> d{dim_a, dim_b, dim_a, dim_b};
  const auto p = [&](int slot) { return static_cast<std::size_t>(perm[static_cast<std::size_t>(slot)]); };
  const std::size_t out_rows = d[p(0)] * d[p(1)], out_cols = d[p(2)] * d[p(3)];
  const std::size_t n = dim_a * dim_b;
  CMatrix s = CMatrix::Zero(idx(out_rows * out_cols), idx(n * n));
  std::array<std::size_t, 4> s_idx{};
  for (s_idx[0] = 0; s_idx[0] < dim_a; ++s_idx[0])
    for (s_idx[1] = 0; s_idx[1] < dim_b; ++s_idx[1])
      for (s_idx[2] = 0; s_idx[2] < dim_a; ++s_idx[2])
        for (s_idx[3] = 0; s_idx[3] < dim_b; ++s_idx[3]) {
          const std::size_t in_row = s_idx[0] * dim_b + s_idx[1];
          const std::size_t in_col = s_idx[2] * dim_b + s_idx[3];
          const std::size_t out_row = s_idx[p(0)] * d[p(1)] + s_idx[p(1)];
          const std::size_t out_col = s_idx[p(2)] * d[p(3)] + s_idx[p(3)];
          s(idx(out_row * out_cols + out_col), idx(in_row * n + in_col)) = 1.0;
        }
  return LinearMap(n, out_rows, out_cols, std::move(s));
}

LinearMap realignment_map(std::size_t dim_a, std::size_t dim_b) {
  return index_permutation_map({0, 2, 1, 3}, dim_a, dim_b);
}

namespace {

std::array<int, 4> parse_permutation(std::string_view name) {
  // "index_permutation(a,b,c,d)"
  const auto open = name.find('(');
  const auto close = name.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw InvalidArgumentError("index_permutation needs four indices, e.g. index_permutation(0,2,1,3)");
  }
  std::array<int, 4> perm{};
  std::size_t count = 0;
  for (char ch : name.substr(open + 1, close - open - 1)) {
    if (ch == ',' || ch == ' ') continue;
    if (ch < '0' || ch > '9' || count == 4) {
      throw InvalidArgumentError("index_permutation needs four indices, e.g. index_permutation(0,2,1,3)");
    }
    perm[count++] = ch - '0';
  }
  if (count != 4) {
    throw InvalidArgumentError("index_permutation needs four indices, e.g. index_permutation(0,2,1,3)");
  }
  return perm;
}

}  // namespace

LinearMap builtin_map(std::string_view name, const Dims& dims) {
  const std::size_t total = product(dims);
  if (name == "identity") return identity_map(total);
  if (name == "transpose") return transpose_map(total);
  if (name == "reduction") return reduction_map(total);
  if (name == "realignment" || name.starts_with("index_permutation")) {
    if (dims.size() != 2) throw DimensionError(std::string(name) + " needs exactly two subsystems");
    if (name == "realignment") return realignment_map(dims[0], dims[1]);
    return index_permutation_map(parse_permutation(name), dims[0], dims[1]);
  }
  throw InvalidArgumentError("unknown map '" + std::string(name) + "'");
}

}  // namespace mapnet
