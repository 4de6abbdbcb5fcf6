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

// Acceptance gate: one PASS/FAIL line per criterion. Usage: acceptance [CLI]

#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "mapnet/detect.hpp"
#include "mapnet/errors.hpp"
#include "mapnet/json_io.hpp"
#include "mapnet/linear_map.hpp"
#include "mapnet/network.hpp"
#include "mapnet/observable.hpp"
#include "mapnet/spectra.hpp"
#include "mapnet/states.hpp"
#include "oracles.hpp"

namespace {

using namespace mapnet;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Θ(ρ) computed without the library's superoperators.
using DirectMap = std::function<oracle::CMatrix(const oracle::CMatrix&)>;

oracle::CMatrix reduction_b(const oracle::CMatrix& rho, Eigen::Index da, Eigen::Index db) {
  oracle::CMatrix rho_a = oracle::CMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < da; ++k)
      for (Eigen::Index j = 0; j < db; ++j) rho_a(i, k) += rho(i * db + j, k * db + j);
  return oracle::kron(rho_a, oracle::CMatrix::Identity(db, db)) - rho;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Fixed {
    LinearMap theta;
    Dims dims;
    DirectMap direct;
    std::map<std::size_t, CMatrix> ops;
  };
  std::vector<Fixed> fixed;
  fixed.push_back({extend_with_identity(transpose_map(2), 2), {2, 2},
                   [](const oracle::CMatrix& r) { return oracle::partial_transpose_b(r, 2, 2); }, {}});
  fixed.push_back({extend_with_identity(transpose_map(3), 2), {2, 3},
                   [](const oracle::CMatrix& r) { return oracle::partial_transpose_b(r, 2, 3); }, {}});
  fixed.push_back({extend_with_identity(reduction_map(2), 2), {2, 2},
                   [](const oracle::CMatrix& r) { return reduction_b(r, 2, 2); }, {}});
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int kind = t % 4;
    std::size_t k = 1 + static_cast<std::size_t>((t / 4) % 4);
    CMatrix op;
    double expect;
    CMatrix rho;
    if (kind < 3) {
      Fixed& f = fixed[static_cast<std::size_t>(kind)];
      rho = random_state(f.dims, 5000 + static_cast<std::uint64_t>(t)).mat();
      if (!f.ops.count(k)) f.ops[k] = observable_operator(f.theta, k);
      op = f.ops[k];
      expect = oracle::power_sum(oracle::eigenvalues(f.direct(rho)), static_cast<int>(k));
    } else {
      std::vector<double> eta;
      std::vector<CMatrix> ks;
      for (int j = 0; j < 3; ++j) {
        eta.push_back(u(rng));
        ks.push_back(oracle::gaussian(3, 3, rng) / std::sqrt(3.0));
      }
      const LinearMap theta = map_from_kraus_pairs({eta, ks});
      rho = random_state({3}, 5000 + static_cast<std::uint64_t>(t)).mat();
      op = observable_operator(theta, k);
      expect = oracle::power_sum(oracle::eigenvalues(oracle::apply_kraus(eta, ks, rho)), static_cast<int>(k));
    }
    const double got = trace_of_product(op, tensor_power(rho, k)).real();
    worst = std::max(worst, std::abs(got - expect));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-8 && secs < 30.0,
          "max |Tr[O rho^k] - Tr[Theta(rho)^k]| = " + sci(worst) + " (tol 1e-8), " + sci(secs) + " s (limit 30)"};
}

Outcome criterion2() {
  const LinearMap theta = extend_with_identity(transpose_map(2), 2);
  double err2 = max_abs(collective_observable(theta, 2).mat() - oracle::interleaved_shift(2, 2, 2, 1, 1));
  double err34 = 0.0;
  for (int k : {3, 4}) {
    const CMatrix expect =
        0.5 * (oracle::interleaved_shift(2, 2, k, 1, -1) + oracle::interleaved_shift(2, 2, k, -1, 1));
    err34 = std::max(err34, max_abs(collective_observable(theta, static_cast<std::size_t>(k)).mat() - expect));
  }
  return {err2 <= 1e-12 && err34 <= 1e-12,
          "k=2 vs V1(x)V2: " + sci(err2) + ", k=3,4 vs 1/2(V1 V2^+ + V1^+ V2): " + sci(err34) + " (tol 1e-12)"};
}

Outcome criterion3() {
  const MomentPipeline pipeline(extend_with_identity(transpose_map(2), 2), {2});
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_state({2, 2}, 20000 + s);
    const double alpha2 = pipeline.measure(rho, ExactMode{})[0].alpha;
    worst = std::max(worst, std::abs(alpha2 - (rho.mat() * rho.mat()).trace().real()));
  }
  return {worst <= 1e-10, "max |Tr[(rho^TB)^2] - Tr rho^2| over 100 states = " + sci(worst) + " (tol 1e-10)"};
}

Outcome criterion4() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<LinearMap, Dims>> maps;
  maps.emplace_back(extend_with_identity(transpose_map(2), 2), Dims{2, 2});
  maps.emplace_back(extend_with_identity(reduction_map(2), 2), Dims{2, 2});
  maps.emplace_back(identity_map(3), Dims{3});
  maps.emplace_back(pair_product_map(realignment_map(2, 2)), Dims{2, 2});
  {
    std::vector<double> eta;
    std::vector<CMatrix> ks;
    for (int j = 0; j < 2; ++j) {
      eta.push_back(u(rng));
      ks.push_back(oracle::gaussian(3, 3, rng));
    }
    maps.emplace_back(map_from_kraus_pairs({eta, ks}), Dims{3});
  }
  double complete = 0, commute = 0, unitary = 0, mean = 0, substitution = 0;
  int networks = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& [theta, dims] = maps[i];
    const bool doubled = i == 3;
    for (std::size_t k = 1; k <= 4; ++k) {
      if (checked_pow(std::max(theta.src_dim(), theta.dst_rows()), k) > size_cap()) continue;
      const Observable o = collective_observable(theta, k);
      const DilationUnitary d = dilation_unitary(binary_povm(o));
      ++networks;
      complete = std::max(complete, povm_completeness_error(d.povm));
      commute = std::max(commute, povm_commutator_error(d.povm));
      const CMatrix ua = d.u_a();
      unitary = std::max(unitary, max_abs(ua.adjoint() * ua - CMatrix::Identity(ua.rows(), ua.cols())));
      DensityMatrix rho = random_state(dims, 40000 + 10 * i + k);
      if (doubled) rho = tensor_product(rho, rho);
      const CMatrix sigma = tensor_power(rho.mat(), k);
      const double v = visibility_exact(d, sigma);
      mean = std::max(mean, std::abs(mean_from_visibility(v, d.povm) - trace_of_product(o.mat(), sigma).real()));
      Eigen::HouseholderQR<CMatrix> qr(oracle::gaussian(static_cast<Eigen::Index>(d.dim()),
                                                        static_cast<Eigen::Index>(d.dim()), rng));
      const CMatrix w = qr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(d.dim()),
                                                              static_cast<Eigen::Index>(d.dim()));
      substitution = std::max(substitution, std::abs(visibility_exact(d, sigma, w) - v));
    }
  }
  const bool pass = complete <= 1e-8 && commute <= 1e-8 && unitary <= 1e-8 && mean <= 1e-8 && substitution <= 1e-10;
  return {pass, std::to_string(networks) + " networks: completeness " + sci(complete) + ", [V0,V1] " + sci(commute) +
                    ", U_A unitarity " + sci(unitary) + " (tol 1e-8), mean round trip " + sci(mean) +
                    " (tol 1e-8), U' substitution " + sci(substitution) + " (tol 1e-10)"};
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  const PositiveMapTest ppt(transpose_map(2), 2, "ppt");
  double worst = 0.0;
  bool verdicts_ok = true;
  int flips = 0;
  Verdict prev = Verdict::not_detected;
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const DensityMatrix rho = werner_state(p);
    const auto r = ppt.run(rho, ExactMode{});
    const double direct = oracle::min_eigenvalue(oracle::partial_transpose_b(rho.mat(), 2, 2));
    worst = std::max({worst, std::abs(r.statistic - direct), std::abs(r.statistic - (1.0 - 3.0 * p) / 4.0)});
    const Verdict expect = p > 1.0 / 3.0 ? Verdict::entangled : Verdict::not_detected;
    verdicts_ok = verdicts_ok && r.verdict == expect;
    flips += i > 0 && r.verdict != prev;
    prev = r.verdict;
  }
  const bool below = ppt.run(werner_state(1.0 / 3.0 - 1e-6), ExactMode{}).verdict == Verdict::not_detected;
  const bool at = ppt.run(werner_state(1.0 / 3.0), ExactMode{}).verdict == Verdict::not_detected;
  const bool above = ppt.run(werner_state(1.0 / 3.0 + 1e-6), ExactMode{}).verdict == Verdict::entangled;
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-7 && verdicts_ok && flips == 1 && below && at && above && secs < 10.0;
  return {pass, "max |lambda_min - (1-3p)/4| = " + sci(worst) + " (tol 1e-7), flips " + std::to_string(flips) +
                    ", boundary 1/3 -+ 1e-6 " + (below && at && above ? "ok" : "wrong") + ", " + sci(secs) +
                    " s (limit 10)"};
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  const PositiveMapTest ppt(transpose_map(2), 2, "ppt");
  const auto r = ppt.run(werner_state(0.8), ShotsMode{1000000, 20240601});
  const double secs = seconds_since(t0);
  const double dev = std::abs(r.statistic + 0.35);
  const bool pass = dev <= 5.0 * r.std_error && r.verdict == Verdict::entangled && secs < 60.0;
  return {pass, "lambda_min = " + std::to_string(r.statistic) + " +- " + sci(r.std_error) + ", |dev| = " + sci(dev) +
                    " (<= 5 sigma = " + sci(5.0 * r.std_error) + "), verdict " + to_string(r.verdict) + ", " +
                    sci(secs) + " s (limit 60)"};
}

Outcome criterion7() {
  const ContractionTest ccn(realignment_map(2, 2), "realignment");
  const double bell = std::abs(ccn.run(bell_state(0), ExactMode{}).statistic - 2.0);
  CVector psi = CVector::Zero(4), a(2), b(2);
  a << 0.6, 0.8;
  b << Complex(0.0, 1.0), 0.5;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) psi(2 * i + j) = a(i) * b(j);
  const double product = std::abs(ccn.run(pure_state(psi, {2, 2}), ExactMode{}).statistic - 1.0);
  double random = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix rho = random_state({2, 2}, 60000 + s);
    const double oracle_norm = oracle::trace_norm(oracle::realign(rho.mat(), 2, 2));
    random = std::max(random, std::abs(ccn.run(rho, ExactMode{}).statistic - oracle_norm));
  }
  const LinearMap r = realignment_map(2, 2);
  const LinearMap rp = primed_map(r);
  double lemma = 0.0;
  std::mt19937_64 rng(707);
  for (int t = 0; t < 100; ++t) {
    const CMatrix g = oracle::gaussian(4, 4, rng);
    const CMatrix x = 0.5 * (g + g.adjoint());
    lemma = std::max(lemma, max_abs(mapnet::apply(rp, x) - mapnet::apply(r, x).adjoint()));
  }
  const bool pass = bell <= 1e-7 && product <= 1e-7 && random <= 1e-7 && lemma <= 1e-10;
  return {pass, "Bell |stat-2| " + sci(bell) + ", product |stat-1| " + sci(product) + ", 100 random vs SVD " +
                    sci(random) + " (tol 1e-7), R'(X) = R(X)^+ on 100 Hermitian X " + sci(lemma) + " (tol 1e-10)"};
}

Outcome criterion8() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 8);
  double worst = 0.0;
  int failures = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = static_cast<std::size_t>(dim(rng));
    std::vector<double> l(m), alpha(m);
    for (double& x : l) x = u(rng);
    for (std::size_t k = 1; k <= m; ++k) alpha[k - 1] = oracle::power_sum(l, static_cast<int>(k));
    try {
      worst = std::max(worst, oracle::sorted_distance(spectrum_from_moments(alpha, m).eigenvalues, l));
    } catch (const mapnet::Error&) {
      ++failures;
    }
  }
  return {worst <= 1e-6 && failures == 0,
          "500 spectra (m <= 8): max sorted error " + sci(worst) + " (tol 1e-6), failures " + std::to_string(failures)};
}

std::string capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int st = pclose(pipe);
  if (st != 0) out += "<exit " + std::to_string(st) + ">";
  return out;
}

Outcome criterion9(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("mapnet_accept_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::string state = (dir / "w.json").string();
  const std::string rnd = (dir / "r.json").string();
  capture(cli + " generate --family werner --p 0.6 --out " + state);
  capture(cli + " generate --family random --dims 2,2 --seed 3 --out " + rnd);
  const std::vector<std::string> cmds = {
      cli + " detect --state " + state + " --criterion ppt --shots 1000000 --seed 7",
      cli + " detect --state " + rnd + " --criterion reduction --shots 100000 --seed 11",
      cli + " moments --state " + state + " --map partial_transpose --k-max 4 --shots 50000 --seed 5",
      cli + " detect --state " + rnd + " --criterion realignment",
  };
  int identical = 0;
  bool roundtrip = true;
  for (const auto& c : cmds) {
    const std::string a = capture(c), b = capture(c);
    identical += !a.empty() && a == b && a.find("<exit") == std::string::npos;
    try {
      roundtrip = roundtrip && dump(parse_json(a)) == a;
    } catch (const mapnet::Error&) {
      roundtrip = false;
    }
  }
  fs::remove_all(dir);
  const bool pass = identical == static_cast<int>(cmds.size()) && roundtrip;
  return {pass, std::to_string(identical) + "/" + std::to_string(cmds.size()) +
                    " invocations byte-identical across runs, JSON re-emit " + (roundtrip ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 observable identity", criterion1},
      {"2 partial-transpose observables", criterion2},
      {"3 purity identity", criterion3},
      {"4 network contracts", criterion4},
      {"5 PPT pipeline, exact Werner sweep", criterion5},
      {"6 PPT pipeline, shots Werner p=0.8", criterion6},
      {"7 contraction pipeline", criterion7},
      {"8 moment-to-spectrum round trip", criterion8},
      {"9 CLI determinism", [&] { return criterion9(cli); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
