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

#include "mapnet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

// Value of the d-th derivative of x^m + c_1 x^{m-1} + ... + c_m.
double eval_derivative(std::span<const double> tail, std::size_t d, double x) {
  const std::size_t m = tail.size();
  if (d > m) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + d <= m; ++i) {
    const double a = i == 0 ? 1.0 : tail[i - 1];
    double f = 1.0;  // (m-i)! / (m-i-d)!
    for (std::size_t t = 0; t < d; ++t) f *= static_cast<double>(m - i - t);
    acc = acc * x + a * f;
  }
  return acc;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

RootOptions noisy_root_options(double moment_sigma) {
  RootOptions o;
  o.coeff_tol = std::max(o.coeff_tol, 25.0 * moment_sigma);
  return o;
}

std::vector<double> newton_girard(std::span<const double> moments, std::size_t m) {
  if (moments.size() != m) {
    throw InvalidArgumentError("newton_girard: expected " + std::to_string(m) + " moments, got " +
                               std::to_string(moments.size()));
  }
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[k - i] * moments[i - 1];
    }
    e[k] = acc / static_cast<double>(k);
  }
  return {e.begin() + 1, e.end()};
}

std::vector<double> characteristic_coefficients(std::span<const double> e) {
  std::vector<double> c(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) c[k] = (k % 2 == 0) ? -e[k] : e[k];
  return c;
}

std::vector<double> roots_real(std::span<const double> monic_tail, const RootOptions& opts) {
  const std::size_t m = monic_tail.size();
  if (m == 0) return {};

  std::vector<std::complex<double>> z(m);
  if (m == 1) {
    z[0] = -monic_tail[0];
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                      static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) companion(0, static_cast<Eigen::Index>(j)) = -monic_tail[j];
    for (std::size_t i = 1; i < m; ++i) {
      companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    if (es.info() != Eigen::Success) {
      throw ReconstructionError("companion eigenvalue iteration did not converge", {});
    }
    for (std::size_t i = 0; i < m; ++i) z[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  }

  double scale = 1.0;
  for (const auto& r : z) scale = std::max(scale, std::abs(r));

  // Group roots connected through non-real members.
  DisjointSets sets(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double im = std::max(std::abs(z[i].imag()), std::abs(z[j].imag()));
      if (im > 0.0 && std::abs(z[i] - z[j]) <= 2.5 * im) sets.join(i, j);
    }

  std::vector<double> out(m);
  std::vector<bool> done(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < m; ++j)
      if (sets.find(j) == sets.find(i)) members.push_back(j);
    for (std::size_t j : members) done[j] = true;

    const std::size_t mu = members.size();
    double extent = 0.0, centre = 0.0;
    for (std::size_t j : members) {
      extent = std::max(extent, std::abs(z[j].imag()));
      centre += z[j].real();
    }
    centre /= static_cast<double>(mu);
    if (mu == 1) {
      out[members[0]] = z[members[0]].real();
      continue;
    }
    const double allowed =
        scale * std::max(opts.tol_imag, std::pow(opts.coeff_tol, 1.0 / static_cast<double>(mu)));
    if (extent > allowed) {
      throw ReconstructionError("polynomial has non-real roots (imaginary part " +
                                    std::to_string(extent) + ", allowed " +
                                    std::to_string(allowed) + ")",
                                z);
    }
    double radius = 0.0;
    for (std::size_t j : members) radius = std::max(radius, std::abs(z[j] - centre));
    // A μ-fold root is a simple root of the (μ-1)-th derivative.
    double x = centre;
    for (int it = 0; it < 60; ++it) {
      const double f = eval_derivative(monic_tail, mu - 1, x);
      const double df = eval_derivative(monic_tail, mu, x);
      if (df == 0.0) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
        break;
      }
    }
    if (!std::isfinite(x) || std::abs(x - centre) > 2.0 * radius) x = centre;
    for (std::size_t j : members) out[j] = x;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double moment_residual(std::span<const double> eigenvalues, std::span<const double> moments) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= moments.size(); ++k) {
    double s = 0.0;
    for (double l : eigenvalues) s += std::pow(l, static_cast<double>(k));
    worst = std::max(worst, std::abs(s - moments[k - 1]));
  }
  return worst;
}

Spectrum spectrum_from_moments(std::span<const double> moments, std::size_t m,
                               const RootOptions& opts) {
  if (moments.size() < m) {
    throw InvalidArgumentError("spectrum_from_moments: need " + std::to_string(m) +
                               " moments, got " + std::to_string(moments.size()));
  }
  const auto used = moments.first(m);
  const auto e = newton_girard(used, m);
  const auto c = characteristic_coefficients(e);
  Spectrum s;
  s.eigenvalues = roots_real(c, opts);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
  s.residual = moment_residual(s.eigenvalues, used);
  return s;
}

Spectrum spectrum_from_moments(const MomentVector& moments, std::size_t m,
                               const RootOptions& opts) {
  return spectrum_from_moments(std::span<const double>(moments.values), m, opts);
}

double trace_norm_from_gammas(std::span<const double> gammas, double negative_tol,
                              double zero_floor) {
  double top = 0.0;
  for (double g : gammas) {
    if (g < -negative_tol) {
      throw InvalidGammaError("gamma " + std::to_string(g) + " is negative beyond tolerance");
    }
    top = std::max(top, g);
  }
  double sum = 0.0;
  for (double g : gammas) {
    if (g > zero_floor * top) sum += std::sqrt(g);
  }
  return sum;
}

}  // namespace mapnet
