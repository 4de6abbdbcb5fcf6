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

// Entanglement tests run through moment networks.
//
// Positive-map test: Θ = I ⊗ Λ. The spectrum of Θ(ρ) is rebuilt from its
// power sums, and a negative eigenvalue certifies entanglement.
//
// Contraction test: L_R = R ⊗ R′ (multiplication convention, see
// pair_product_map) is fed ρ ⊗ ρ. Its power sums are Σ γ_i^k for the
// eigenvalues γ_i of R(ρ)R(ρ)†, and ||R(ρ)||_Tr = Σ sqrt(γ_i) > 1 certifies
// entanglement.
//
// Each power sum k goes through observable -> POVM -> dilation -> visibility
// -> mean. Exact mode evaluates the visibility exactly; shots mode samples the
// control qubit. When a k-copy operator exceeds the size cap, exact mode
// computes Tr[Θ(ρ)^k] directly and shots mode throws SizeCapError.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mapnet/linear_map.hpp"
#include "mapnet/network.hpp"
#include "mapnet/observable.hpp"
#include "mapnet/spectra.hpp"
#include "mapnet/tensor.hpp"

namespace mapnet {

struct ExactMode {};
struct ShotsMode {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};
using Mode = std::variant<ExactMode, ShotsMode>;

enum class Route { network, direct };

struct MomentRecord {
  std::size_t k = 0;
  Route route = Route::network;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double v = 0.0;       // exact visibility, or the sampled estimate in shots mode
  double p0_hat = 0.0;  // exact p0 in exact mode
  std::uint64_t shots = 0;
  double alpha = 0.0;
  double std_error = 0.0;  // of alpha
  bool visibility_clamped = false;
};

/// Networks for the power sums of one map, built once and reused across states.
class MomentPipeline {
 public:
  struct Stage {
    std::size_t k;
    std::optional<Observable> observable;  // empty on the direct route
    std::optional<DilationUnitary> network;
  };

  MomentPipeline(LinearMap theta, const std::vector<std::size_t>& ks, std::size_t cap = size_cap());

  const LinearMap& map() const noexcept { return theta_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }

  /// One record per prepared k, in order. Throws DimensionError if the state
  /// does not match the map and SizeCapError for a direct-route k in shots mode.
  std::vector<MomentRecord> measure(const DensityMatrix& input, const Mode& mode) const;

 private:
  LinearMap theta_;
  std::vector<Stage> stages_;
};

/// Output dimension m of Θ, minus one when Θ is trace preserving and
/// exploit_trace_preservation is set (α_1 = Tr ρ = 1 is then known).
std::size_t required_moment_count(const LinearMap& theta, bool exploit_trace_preservation = true);

enum class CriterionKind { positive_map, contraction };
enum class Verdict { entangled, not_detected };

struct Criterion {
  CriterionKind kind;
  std::string name;
};

struct DetectionReport {
  Criterion criterion;
  Mode mode;
  MomentVector moments;   // α_1..α_m used for reconstruction
  std::vector<MomentRecord> records;
  Spectrum spectrum;      // eigenvalues of Θ(ρ), or the γ_i
  double statistic = 0.0;  // min eigenvalue, or trace norm
  double threshold = 0.0;  // 0, or 1
  double margin = 0.0;     // signed violation: threshold - min eig, or trace norm - 1
  double gate = 0.0;       // 1e-8 in exact mode, 3·std_error in shots mode
  double std_error = 0.0;  // of the statistic; infinite if the bootstrap mostly failed
  Verdict verdict = Verdict::not_detected;
  bool calibration_ok = true;  // shots mode α_1 check for trace-preserving maps
  std::size_t bootstrap_failures = 0;
};

struct DetectOptions {
  std::size_t cap = size_cap();
  std::size_t bootstrap_replicates = 256;
};

inline constexpr double kExactGate = 1e-8;

/// [I ⊗ Λ](ρ) >= 0 test for a bipartite ρ, with Λ acting on the second factor.
class PositiveMapTest {
 public:
  /// Throws CriterionMisuseError unless Λ preserves hermiticity.
  PositiveMapTest(const LinearMap& lambda, std::size_t dim_a, std::string name,
                  DetectOptions opts = {});

  DetectionReport run(const DensityMatrix& rho, const Mode& mode) const;

  const MomentPipeline& pipeline() const noexcept { return pipeline_; }
  bool trace_preserving() const noexcept { return trace_preserving_; }

 private:
  std::string name_;
  std::size_t dim_a_;
  std::size_t dim_b_;
  bool trace_preserving_;
  DetectOptions opts_;
  MomentPipeline pipeline_;
};

/// ||R(ρ)||_Tr <= 1 test through L_R on ρ ⊗ ρ.
class ContractionTest {
 public:
  ContractionTest(const LinearMap& r, std::string name, DetectOptions opts = {});

  DetectionReport run(const DensityMatrix& rho, const Mode& mode) const;

  const MomentPipeline& pipeline() const noexcept { return pipeline_; }

 private:
  std::string name_;
  std::size_t src_dim_;
  DetectOptions opts_;
  MomentPipeline pipeline_;
};

DetectionReport run_positive_map_test(const DensityMatrix& rho, const LinearMap& lambda,
                                      const Mode& mode, const std::string& name = "custom",
                                      DetectOptions opts = {});

DetectionReport run_contraction_test(const DensityMatrix& rho, const LinearMap& r,
                                     const Mode& mode, const std::string& name = "custom",
                                     DetectOptions opts = {});

}  // namespace mapnet
