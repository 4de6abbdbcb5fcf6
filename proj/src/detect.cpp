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

#include "mapnet/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

bool is_exact(const Mode& mode) { return std::holds_alternative<ExactMode>(mode); }

std::vector<std::size_t> one_to(std::size_t m) {
  std::vector<std::size_t> ks(m);
  for (std::size_t k = 0; k < m; ++k) ks[k] = k + 1;
  return ks;
}

using Statistic = std::function<double(const std::vector<double>&)>;

// Seeded parametric bootstrap: perturb each moment by its Gaussian error,
// rebuild the spectrum and recompute the statistic.
double bootstrap_std_error(const std::vector<double>& alphas, const std::vector<double>& sigmas,
                           std::size_t m, const RootOptions& opts, const Statistic& statistic,
                           std::size_t replicates, std::uint64_t seed, std::size_t& failures) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x626f6f74u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values;
  values.reserve(replicates);
  failures = 0;
  std::vector<double> perturbed(alphas.size());
  for (std::size_t r = 0; r < replicates; ++r) {
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      perturbed[k] = alphas[k] + (sigmas[k] > 0.0 ? sigmas[k] * normal(rng) : 0.0);
    }
    try {
      const auto s = spectrum_from_moments(std::span<const double>(perturbed), m, opts);
      values.push_back(statistic(s.eigenvalues));
    } catch (const Error&) {
      ++failures;
    }
  }
  if (values.size() < 2 || 2 * failures > replicates) {
    return std::numeric_limits<double>::infinity();
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size() - 1));
}

// Spectrum, statistic and verdict from measured moments.
void finish_report(DetectionReport& report, std::size_t m, const Statistic& statistic,
                   bool violation_is_above, std::size_t replicates) {
  const auto& alphas = report.moments.values;
  const auto& sigmas = report.moments.std_errors;
  RootOptions opts;
  if (const auto* shots = std::get_if<ShotsMode>(&report.mode)) {
    const double worst = sigmas.empty() ? 0.0 : *std::max_element(sigmas.begin(), sigmas.end());
    opts = noisy_root_options(worst);
    report.spectrum = spectrum_from_moments(std::span<const double>(alphas), m, opts);
    report.statistic = statistic(report.spectrum.eigenvalues);
    report.std_error = bootstrap_std_error(alphas, sigmas, m, opts, statistic, replicates,
                                           shots->seed, report.bootstrap_failures);
    report.gate = 3.0 * report.std_error;
  } else {
    report.spectrum = spectrum_from_moments(std::span<const double>(alphas), m, opts);
    report.statistic = statistic(report.spectrum.eigenvalues);
    report.std_error = 0.0;
    report.gate = kExactGate;
  }
  report.margin = violation_is_above ? report.statistic - report.threshold
                                     : report.threshold - report.statistic;
  report.verdict = (std::isfinite(report.gate) && report.margin > report.gate)
                       ? Verdict::entangled
                       : Verdict::not_detected;
}

}  // namespace

MomentPipeline::MomentPipeline(LinearMap theta, const std::vector<std::size_t>& ks,
                               std::size_t cap)
    : theta_(std::move(theta)) {
  if (!theta_.square_output()) throw DimensionError("moment pipeline needs a map with square output");
  for (std::size_t k : ks) {
    if (k == 0) throw InvalidArgumentError("moments start at k = 1");
    Stage stage{k, std::nullopt, std::nullopt};
    const std::size_t rows =
        std::max(checked_pow(theta_.src_dim(), k), checked_pow(theta_.dst_rows(), k));
    if (rows <= cap) {
      stage.observable = collective_observable(theta_, k, cap);
      stage.network = dilation_unitary(binary_povm(*stage.observable));
    }
    stages_.push_back(std::move(stage));
  }
}

std::vector<MomentRecord> MomentPipeline::measure(const DensityMatrix& input, const Mode& mode) const {
  if (input.dim() != theta_.src_dim()) {
    throw DimensionError("state dimension " + std::to_string(input.dim()) +
                         " does not match the map input " + std::to_string(theta_.src_dim()));
  }
  std::vector<MomentRecord> records;
  for (const auto& stage : stages_) {
    MomentRecord rec;
    rec.k = stage.k;
    if (!stage.network) {
      if (!is_exact(mode)) {
        throw SizeCapError("k = " + std::to_string(stage.k) +
                           " exceeds the size cap; shots mode needs the network");
      }
      rec.route = Route::direct;
      rec.alpha = moment_exact(theta_, input, stage.k);
      records.push_back(rec);
      continue;
    }
    const auto& net = *stage.network;
    rec.route = Route::network;
    rec.a_minus = net.povm.a_minus;
    rec.a_plus = net.povm.a_plus;
    const CMatrix sigma = tensor_power(input.mat(), stage.k);
    const auto v = check_visibility(visibility_exact(net, sigma));
    rec.visibility_clamped = v.clamped;
    if (const auto* shots = std::get_if<ShotsMode>(&mode)) {
      const auto est = simulate_shots((v.value + 1.0) / 2.0, shots->shots, shots->seed, stage.k);
      rec.v = est.v_hat;
      rec.p0_hat = est.p0_hat;
      rec.shots = est.shots;
      rec.alpha = mean_from_visibility(est.v_hat, net.povm);
      rec.std_error = net.povm.a_plus * est.std_error / 2.0;
    } else {
      rec.v = v.value;
      rec.p0_hat = (v.value + 1.0) / 2.0;
      rec.alpha = mean_from_visibility(v.value, net.povm);
    }
    records.push_back(rec);
  }
  return records;
}

std::size_t required_moment_count(const LinearMap& theta, bool exploit_trace_preservation) {
  const std::size_t m = theta.dst_rows();
  if (exploit_trace_preservation && m > 1 && trace_preserving(theta)) return m - 1;
  return m;
}

PositiveMapTest::PositiveMapTest(const LinearMap& lambda, std::size_t dim_a, std::string name,
                                 DetectOptions opts)
    : name_(std::move(name)),
      dim_a_(dim_a),
      dim_b_(lambda.src_dim()),
      trace_preserving_(false),
      opts_(opts),
      pipeline_([&] {
        if (!hermiticity_preserving(lambda)) {
          throw CriterionMisuseError("positive-map test needs a hermiticity-preserving map; '" +
                                     name_ + "' is not");
        }
        LinearMap theta = extend_with_identity(lambda, dim_a);
        const std::size_t m = theta.dst_rows();
        return MomentPipeline(std::move(theta), one_to(m), opts.cap);
      }()) {
  trace_preserving_ = required_moment_count(pipeline_.map()) < pipeline_.map().dst_rows();
}

DetectionReport PositiveMapTest::run(const DensityMatrix& rho, const Mode& mode) const {
  if (rho.dims() != Dims{dim_a_, dim_b_}) {
    throw DimensionError("positive-map test expects a state on C^" + std::to_string(dim_a_) +
                         " ⊗ C^" + std::to_string(dim_b_));
  }
  const std::size_t m = pipeline_.map().dst_rows();
  DetectionReport report{{CriterionKind::positive_map, name_}, mode, {}, {}, {}};
  report.threshold = 0.0;

  auto records = pipeline_.measure(rho, mode);
  // α_1 = Tr ρ = 1 for trace-preserving Λ. Exact mode drops the k = 1 record;
  // shots mode keeps it as a calibration check.
  for (const auto& rec : records) {
    if (rec.k == 1 && trace_preserving_) {
      if (is_exact(mode)) continue;
      report.calibration_ok = std::abs(rec.alpha - 1.0) <= 5.0 * rec.std_error + 1e-9;
      report.moments.values.push_back(1.0);
      report.moments.std_errors.push_back(0.0);
      report.records.push_back(rec);
      continue;
    }
    report.moments.values.push_back(rec.alpha);
    report.moments.std_errors.push_back(rec.std_error);
    report.records.push_back(rec);
  }
  if (trace_preserving_ && is_exact(mode)) {
    report.moments.values.insert(report.moments.values.begin(), 1.0);
    report.moments.std_errors.insert(report.moments.std_errors.begin(), 0.0);
  }
  finish_report(
      report, m,
      [](const std::vector<double>& eig) {
        return *std::min_element(eig.begin(), eig.end());
      },
      /*violation_is_above=*/false, opts_.bootstrap_replicates);
  return report;
}

ContractionTest::ContractionTest(const LinearMap& r, std::string name, DetectOptions opts)
    : name_(std::move(name)),
      src_dim_(r.src_dim()),
      opts_(opts),
      pipeline_(pair_product_map(r), one_to(r.dst_rows()), opts.cap) {}

DetectionReport ContractionTest::run(const DensityMatrix& rho, const Mode& mode) const {
  if (rho.dim() != src_dim_) {
    throw DimensionError("contraction map expects a state of dimension " + std::to_string(src_dim_));
  }
  const std::size_t m = pipeline_.map().dst_rows();
  DetectionReport report{{CriterionKind::contraction, name_}, mode, {}, {}, {}};
  report.threshold = 1.0;
  report.records = pipeline_.measure(tensor_product(rho, rho), mode);
  double worst = 0.0;
  for (const auto& rec : report.records) {
    report.moments.values.push_back(rec.alpha);
    report.moments.std_errors.push_back(rec.std_error);
    worst = std::max(worst, rec.std_error);
  }
  const double negative_tol =
      is_exact(mode) ? 1e-6
                     : std::max(1e-6, std::pow(noisy_root_options(worst).coeff_tol,
                                               1.0 / static_cast<double>(m)));
  finish_report(
      report, m,
      [negative_tol](const std::vector<double>& gammas) {
        return trace_norm_from_gammas(gammas, negative_tol);
      },
      /*violation_is_above=*/true, opts_.bootstrap_replicates);
  return report;
}

DetectionReport run_positive_map_test(const DensityMatrix& rho, const LinearMap& lambda,
                                      const Mode& mode, const std::string& name,
                                      DetectOptions opts) {
  if (rho.dims().size() != 2) throw DimensionError("positive-map test needs a bipartite state");
  return PositiveMapTest(lambda, rho.dims()[0], name, opts).run(rho, mode);
}

DetectionReport run_contraction_test(const DensityMatrix& rho, const LinearMap& r,
                                     const Mode& mode, const std::string& name,
                                     DetectOptions opts) {
  return ContractionTest(r, name, opts).run(rho, mode);
}

}  // namespace mapnet
