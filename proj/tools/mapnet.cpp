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

// mapnet command-line front end.
//
// Exit status: 0 on success whatever the verdict, 1 on I/O or validation
// failure, 2 when an operator would exceed the size cap.

#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapnet/detect.hpp"
#include "mapnet/errors.hpp"
#include "mapnet/json_io.hpp"
#include "mapnet/linear_map.hpp"
#include "mapnet/network.hpp"
#include "mapnet/observable.hpp"
#include "mapnet/states.hpp"

namespace {

using namespace mapnet;

enum class Format { json, text, csv };

struct Options {
  std::string state;
  std::string map = "partial_transpose";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool text = false;
  bool csv = false;
  std::string out;
  std::size_t k_max = 4;
  std::size_t k = 2;
  std::string criterion = "ppt";
  std::string family = "werner";
  double p = 0.5;
  double fidelity = 0.5;
  std::size_t d = 2;
  std::size_t index = 3;
  std::vector<std::size_t> dims;
  bool with_unitary = false;

  Format format() const { return csv ? Format::csv : text ? Format::text : Format::json; }
  Mode mode() const {
    if (shots == 0) return ExactMode{};
    return ShotsMode{shots, seed};
  }
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
  }
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss << std::setprecision(12) << x;
  return ss.str();
}

DensityMatrix load_state(const std::string& path) {
  if (path.empty()) throw InvalidArgumentError("--state is required");
  return to_density_matrix(state_from_json(parse_json(read_file(path))));
}

// Split dims into (product of all but the last, last).
std::pair<std::size_t, std::size_t> bipartition(const Dims& dims) {
  if (dims.size() < 2) throw DimensionError("a bipartite state (two or more dims) is required");
  const std::size_t a = std::accumulate(dims.begin(), dims.end() - 1, std::size_t{1}, std::multiplies<>());
  return {a, dims.back()};
}

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

bool is_file_map(const std::string& name) { return name.rfind("file:", 0) == 0; }

LinearMap load_map(const std::string& name) {
  return map_from_json(parse_json(read_file(name.substr(5))));
}

// Θ whose moments are reported, and whether it reads ρ ⊗ ρ.
struct MomentMap {
  LinearMap theta;
  bool doubled;
};

MomentMap resolve_moment_map(const std::string& name, const Dims& dims) {
  if (name == "identity") return {identity_map(product(dims)), false};
  if (name == "partial_transpose" || name == "reduction") {
    const LinearMap local =
        name == "reduction" ? reduction_map(dims.back()) : transpose_map(dims.back());
    if (dims.size() < 2) return {local, false};
    return {extend_with_identity(local, bipartition(dims).first), false};
  }
  if (name == "realignment") {
    const auto [a, b] = bipartition(dims);
    return {pair_product_map(realignment_map(a, b)), true};
  }
  if (is_file_map(name)) {
    LinearMap m = load_map(name);
    if (m.src_dim() == product(dims)) return {std::move(m), false};
    if (dims.size() >= 2 && m.src_dim() == dims.back()) {
      return {extend_with_identity(m, bipartition(dims).first), false};
    }
    throw DimensionError("map input dimension " + std::to_string(m.src_dim()) +
                         " fits neither the state nor its last subsystem");
  }
  throw InvalidArgumentError("unknown map '" + name + "'");
}

int cmd_generate(const Options& o) {
  StateFile s;
  s.generator = o.family;
  std::optional<DensityMatrix> rho;
  if (o.family == "werner") {
    rho = werner_state(o.p);
    s.label = "werner(p=" + fmt(o.p) + ")";
  } else if (o.family == "isotropic") {
    rho = isotropic_state(o.fidelity, o.d);
    s.label = "isotropic(F=" + fmt(o.fidelity) + ", d=" + std::to_string(o.d) + ")";
  } else if (o.family == "bell") {
    rho = bell_state(o.index);
    s.label = "bell(" + std::to_string(o.index) + ")";
  } else if (o.family == "random") {
    const Dims dims = o.dims.empty() ? Dims{2, 2} : Dims(o.dims.begin(), o.dims.end());
    rho = random_state(dims, o.seed);
    s.label = "random";
    s.seed = o.seed;
  } else {
    throw InvalidArgumentError("unknown family '" + o.family + "'");
  }
  s.dims = rho->dims();
  s.matrix = rho->mat();
  emit(o, dump(state_to_json(s)));
  return 0;
}

int cmd_moments(const Options& o) {
  if (o.k_max == 0) throw InvalidArgumentError("--k-max must be at least 1");
  const DensityMatrix rho = load_state(o.state);
  const auto [theta, doubled] = resolve_moment_map(o.map, rho.dims());
  const DensityMatrix input = doubled ? tensor_product(rho, rho) : rho;
  std::vector<std::size_t> ks(o.k_max);
  std::iota(ks.begin(), ks.end(), std::size_t{1});
  const MomentPipeline pipeline(theta, ks);
  const auto exact = pipeline.measure(input, ExactMode{});
  std::optional<std::vector<MomentRecord>> sampled;
  if (o.shots > 0) sampled = pipeline.measure(input, o.mode());

  std::string text;
  switch (o.format()) {
    case Format::json: {
      Json j;
      j["schema"] = 1;
      j["map"] = o.map;
      j["dims"] = rho.dims();
      j["mode"] = o.shots > 0 ? Json{{"type", "shots"}, {"shots", o.shots}, {"seed", o.seed}}
                              : Json{{"type", "exact"}};
      Json rows = Json::array();
      for (std::size_t i = 0; i < ks.size(); ++i) {
        Json row;
        row["k"] = ks[i];
        row["route"] = to_string(exact[i].route);
        row["alpha_k"] = exact[i].alpha;
        if (sampled) row["shots"] = record_to_json((*sampled)[i]);
        const auto& stage = pipeline.stages()[i];
        if (stage.network) {
          Json net = network_to_json(*stage.network, false);
          net.erase("uprime");
          row["network"] = std::move(net);
        } else {
          row["network"] = nullptr;
        }
        rows.push_back(std::move(row));
      }
      j["moments"] = std::move(rows);
      text = dump(j);
      break;
    }
    case Format::csv: {
      text = "k,route,alpha_k,alpha_k_shots,std_error\n";
      for (std::size_t i = 0; i < ks.size(); ++i) {
        text += std::to_string(ks[i]) + "," + to_string(exact[i].route) + "," + fmt(exact[i].alpha) + ",";
        if (sampled) text += fmt((*sampled)[i].alpha) + "," + fmt((*sampled)[i].std_error);
        else text += ",";
        text += "\n";
      }
      break;
    }
    case Format::text: {
      for (std::size_t i = 0; i < ks.size(); ++i) {
        text += "alpha_" + std::to_string(ks[i]) + " = " + fmt(exact[i].alpha);
        if (sampled) {
          text += "  (shots: " + fmt((*sampled)[i].alpha) + " ± " + fmt((*sampled)[i].std_error) + ")";
        }
        text += "  [" + std::string(to_string(exact[i].route)) + "]\n";
      }
      break;
    }
  }
  emit(o, text);
  return 0;
}

DetectionReport detect(const Options& o, const DensityMatrix& rho) {
  const std::string& c = o.criterion;
  if (c == "ppt" || c == "reduction") {
    const auto [a, b] = bipartition(rho.dims());
    const LinearMap lambda = c == "ppt" ? transpose_map(b) : reduction_map(b);
    return PositiveMapTest(lambda, a, c).run(rho, o.mode());
  }
  if (c == "realignment") {
    if (rho.dims().size() != 2) throw DimensionError("realignment needs exactly two subsystems");
    const auto [a, b] = bipartition(rho.dims());
    return ContractionTest(realignment_map(a, b), c).run(rho, o.mode());
  }
  if (c == "positive-map") {
    const auto [a, b] = bipartition(rho.dims());
    LinearMap lambda = o.map == "partial_transpose" ? transpose_map(b)
                       : o.map == "reduction"       ? reduction_map(b)
                       : o.map == "identity"        ? identity_map(b)
                       : is_file_map(o.map)         ? load_map(o.map)
                                                    : throw InvalidArgumentError(
                                                          "map '" + o.map + "' is not a positive map on B");
    return PositiveMapTest(lambda, a, o.map).run(rho, o.mode());
  }
  if (c == "contraction") {
    LinearMap r = o.map == "realignment" ? realignment_map(bipartition(rho.dims()).first, rho.dims().back())
                  : o.map == "identity"  ? identity_map(rho.dim())
                  : is_file_map(o.map)   ? load_map(o.map)
                                         : throw InvalidArgumentError(
                                               "map '" + o.map + "' is not usable as a contraction");
    return ContractionTest(r, o.map).run(rho, o.mode());
  }
  throw InvalidArgumentError("unknown criterion '" + c + "'");
}

int cmd_detect(const Options& o) {
  const DensityMatrix rho = load_state(o.state);
  const DetectionReport r = detect(o, rho);
  std::string text;
  switch (o.format()) {
    case Format::json:
      text = dump(report_to_json(r));
      break;
    case Format::csv:
      text = "k,route,alpha_k,std_error,v,p0_hat,shots\n";
      for (const auto& rec : r.records) {
        text += std::to_string(rec.k) + "," + to_string(rec.route) + "," + fmt(rec.alpha) + "," +
                fmt(rec.std_error) + "," + fmt(rec.v) + "," + fmt(rec.p0_hat) + "," +
                std::to_string(rec.shots) + "\n";
      }
      break;
    case Format::text:
      text = "criterion: " + r.criterion.name + "\nverdict: " + to_string(r.verdict) +
             "\nstatistic: " + fmt(r.statistic) + "\nthreshold: " + fmt(r.threshold) +
             "\nmargin: " + fmt(r.margin) + "\ngate: " + fmt(r.gate) + "\n";
      if (!r.calibration_ok) text += "warning: alpha_1 calibration off by more than 5 sigma\n";
      break;
  }
  emit(o, text);
  return 0;
}

int cmd_network(const Options& o) {
  Dims dims;
  if (!o.state.empty()) dims = load_state(o.state).dims();
  else if (!o.dims.empty()) dims.assign(o.dims.begin(), o.dims.end());
  else dims = {2, 2};
  const auto mm = resolve_moment_map(o.map, dims);
  const Observable obs = collective_observable(mm.theta, o.k);
  const DilationUnitary d = dilation_unitary(binary_povm(obs));
  std::string text;
  switch (o.format()) {
    case Format::json: {
      Json j;
      j["map"] = o.map;
      j["dims"] = dims;
      j["k"] = o.k;
      const Json net = network_to_json(d, o.with_unitary);
      for (const auto& [key, value] : net.items()) j[key] = value;
      text = dump(j);
      break;
    }
    case Format::csv:
      text = "control,lambda,theta\n";
      for (std::size_t i = 0; i < d.lambdas.size(); ++i) {
        text += std::to_string(i) + "," + fmt(d.lambdas[i]) + "," + fmt(d.thetas[i]) + "\n";
      }
      break;
    case Format::text:
      text = "k = " + std::to_string(o.k) + ", register dimension " + std::to_string(d.dim()) +
             "\na_minus = " + fmt(d.povm.a_minus) + ", a_plus = " + fmt(d.povm.a_plus) + "\n";
      for (const auto& c : controlled_form(d)) {
        text += "  |" + std::to_string(c.control) + ">: R_y(" + fmt(c.theta) + ")\n";
      }
      break;
  }
  emit(o, text);
  return 0;
}

void add_format_flags(CLI::App* sub, Options& o) {
  auto* j = sub->add_flag("--json", o.json, "JSON output (default)");
  auto* t = sub->add_flag("--text", o.text, "Human-readable output");
  auto* c = sub->add_flag("--csv", o.csv, "CSV table output");
  j->excludes(t)->excludes(c);
  t->excludes(c);
  sub->add_option("--out", o.out, "Write output to PATH instead of stdout");
}

void add_shot_flags(CLI::App* sub, Options& o) {
  sub->add_option("--shots", o.shots, "Shots per moment (0: exact visibilities)");
  sub->add_option("--seed", o.seed, "Seed for shot sampling");
}

const char* kMapHelp = "partial_transpose|reduction|realignment|identity|file:PATH";

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Moment networks for spectra of linear maps and entanglement detection.\n"
               "Environment: MAPNET_SIZE_CAP overrides the operator-size cap (rows)."};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a state file from a named family");
  gen->add_option("--family", o.family, "werner|isotropic|bell|random")
      ->check(CLI::IsMember({"werner", "isotropic", "bell", "random"}));
  gen->add_option("--p", o.p, "Werner singlet weight in [0, 1]");
  gen->add_option("--fidelity", o.fidelity, "Isotropic fidelity F in [0, 1]");
  gen->add_option("--d", o.d, "Isotropic local dimension");
  gen->add_option("--index", o.index, "Bell index: 0 Φ+, 1 Φ-, 2 Ψ+, 3 Ψ-");
  gen->add_option("--dims", o.dims, "Subsystem dimensions for random states")->delimiter(',');
  gen->add_option("--seed", o.seed, "Seed for random states");
  gen->add_option("--out", o.out, "Write output to PATH instead of stdout");

  auto* mom = app.add_subcommand("moments", "Power sums Tr[Θ(ρ)^k] through the networks");
  mom->add_option("--state", o.state, "State file")->required();
  mom->add_option("--map", o.map, kMapHelp);
  mom->add_option("--k-max", o.k_max, "Highest moment order");
  add_shot_flags(mom, o);
  add_format_flags(mom, o);

  auto* det = app.add_subcommand("detect", "Run an entanglement criterion");
  det->add_option("--state", o.state, "State file")->required();
  det->add_option("--criterion", o.criterion, "ppt|reduction|realignment|positive-map|contraction")
      ->check(CLI::IsMember({"ppt", "reduction", "realignment", "positive-map", "contraction"}));
  det->add_option("--map", o.map, std::string("Map for positive-map/contraction: ") + kMapHelp);
  add_shot_flags(det, o);
  add_format_flags(det, o);

  auto* net = app.add_subcommand("network", "Export the measurement network for one moment");
  net->add_option("--state", o.state, "State file (only its dims are used)");
  net->add_option("--dims", o.dims, "Subsystem dimensions when no state is given")->delimiter(',');
  net->add_option("--map", o.map, kMapHelp);
  net->add_option("--k", o.k, "Moment order")->check(CLI::PositiveNumber);
  net->add_flag("--with-unitary", o.with_unitary, "Include the dense U_A when within the size cap");
  add_format_flags(net, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (mom->parsed()) return cmd_moments(o);
    if (det->parsed()) return cmd_detect(o);
    if (net->parsed()) return cmd_network(o);
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
