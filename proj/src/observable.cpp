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

#include "mapnet/observable.hpp"

#include <cmath>
#include <string>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

Observable::Observable(CMatrix mat, std::size_t copies, bool off_contract)
    : mat_(std::move(mat)), eig_(hermitian_eig(mat_, 1e-9)), copies_(copies),
      off_contract_(off_contract) {
  if (mat_.rows() == 0) throw DimensionError("observable must be non-empty");
}

CMatrix apply_on_slot(const LinearMap& m, const CMatrix& x, const Dims& dims, std::size_t slot) {
  if (slot >= dims.size() || dims[slot] != m.src_dim()) {
    throw DimensionError("apply_on_slot: slot dimension does not match the map's input");
  }
  if (!m.square_output()) throw DimensionError("apply_on_slot: map output must be square");
  std::size_t outer = 1, inner = 1;
  for (std::size_t s = 0; s < slot; ++s) outer *= dims[s];
  for (std::size_t s = slot + 1; s < dims.size(); ++s) inner *= dims[s];
  const std::size_t n = m.src_dim(), np = m.dst_rows();
  const std::size_t in_total = outer * n * inner, out_total = outer * np * inner;
  if (x.rows() != idx(in_total) || x.cols() != idx(in_total)) {
    throw DimensionError("apply_on_slot: operator does not match dims");
  }
  const CMatrix& s = m.superop();
  CMatrix out = CMatrix::Zero(idx(out_total), idx(out_total));
  // out((o,p,u),(o',q,u')) = Σ_ij S(p np + q, i n + j) x((o,i,u),(o',j,u'))
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t q = 0; q < np; ++q) {
          const Complex w = s(idx(p * np + q), idx(i * n + j));
          if (w == Complex(0.0, 0.0)) continue;
          for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t o2 = 0; o2 < outer; ++o2) {
              const std::size_t rin = (o * n + i) * inner, cin = (o2 * n + j) * inner;
              const std::size_t rout = (o * np + p) * inner, cout = (o2 * np + q) * inner;
              out.block(idx(rout), idx(cout), idx(inner), idx(inner)).noalias() +=
                  w * x.block(idx(rin), idx(cin), idx(inner), idx(inner));
            }
        }
    }
  return out;
}

CMatrix observable_operator(const LinearMap& theta, std::size_t k, std::size_t cap) {
  if (k == 0) throw InvalidArgumentError("observable needs k >= 1");
  if (!theta.square_output()) {
    throw DimensionError("collective observable needs a map with square output");
  }
  const std::size_t m = theta.dst_rows(), n = theta.src_dim();
  const std::size_t out_rows = checked_pow(m, k), in_rows = checked_pow(n, k);
  if (out_rows > cap || in_rows > cap) {
    throw SizeCapError("observable for k = " + std::to_string(k) + " needs " +
                       std::to_string(std::max(out_rows, in_rows)) + " rows, cap is " +
                       std::to_string(cap));
  }
  const CMatrix v = cyclic_permutation_operator(m, k, cap);
  CMatrix o = hermitian_part(v);
  const LinearMap dual = dual_map(theta);
  Dims dims(k, m);
  for (std::size_t slot = 0; slot < k; ++slot) {
    o = apply_on_slot(dual, o, dims, slot);
    dims[slot] = n;
  }
  return hermitian_part(o);
}

Observable collective_observable(const LinearMap& theta, std::size_t k, std::size_t cap) {
  const bool hp = hermiticity_preserving(theta);
  return Observable(observable_operator(theta, k, cap), k, !hp);
}

double moment_exact(const LinearMap& theta, const DensityMatrix& rho, std::size_t k) {
  if (k == 0) throw InvalidArgumentError("moments start at k = 1");
  if (!theta.square_output()) throw DimensionError("moment_exact: map output must be square");
  const CMatrix a = mapnet::apply(theta, rho.mat());
  CMatrix p = a;
  for (std::size_t i = 1; i < k; ++i) p = p * a;
  const Complex t = p.trace();
  if (std::abs(t.imag()) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw Error("moment_exact: alpha_" + std::to_string(k) + " has imaginary part " +
                std::to_string(t.imag()));
  }
  return t.real();
}

double moment_via_observable(const LinearMap& theta, const DensityMatrix& rho, std::size_t k,
                             std::size_t cap) {
  if (rho.dim() != theta.src_dim()) {
    throw DimensionError("moment_via_observable: state dimension does not match the map");
  }
  const CMatrix o = observable_operator(theta, k, cap);
  return trace_of_product(o, tensor_power(rho.mat(), k)).real();
}

std::pair<double, double> spectrum_bounds(const Observable& o) { return {o.a_min(), o.a_max()}; }

}  // namespace mapnet
