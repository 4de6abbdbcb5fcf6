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

#include "mapnet/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mapnet/errors.hpp"

namespace mapnet {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

std::vector<double> numbers_from(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw FormatError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::size_t size_from(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw FormatError(std::string(what) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

Json mode_to_json(const Mode& mode) {
  Json j;
  if (const auto* s = std::get_if<ShotsMode>(&mode)) {
    j["type"] = "shots";
    j["shots"] = s->shots;
    j["seed"] = s->seed;
  } else {
    j["type"] = "exact";
  }
  return j;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(complex_to_json(a(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw FormatError("matrix must be a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  CMatrix a(idx(rows), idx(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw FormatError("matrix row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t k = 0; k < cols; ++k) a(idx(i), idx(k)) = complex_from_json(j[i][k]);
  }
  return a;
}

Json state_to_json(const StateFile& s) {
  Json j;
  j["dims"] = s.dims;
  j["matrix"] = matrix_to_json(s.matrix);
  if (s.label) j["label"] = *s.label;
  if (s.generator) j["generator"] = *s.generator;
  if (s.seed) j["seed"] = *s.seed;
  return j;
}

StateFile state_from_json(const Json& j) {
  StateFile s;
  const Json& dims = field(j, "dims");
  if (!dims.is_array() || dims.empty()) throw FormatError("dims must be a non-empty integer list");
  for (const auto& d : dims) s.dims.push_back(size_from(d, "dims entries"));
  s.matrix = matrix_from_json(field(j, "matrix"));
  if (j.contains("label") && j["label"].is_string()) s.label = j["label"].get<std::string>();
  if (j.contains("generator") && j["generator"].is_string()) {
    s.generator = j["generator"].get<std::string>();
  }
  if (j.contains("seed") && j["seed"].is_number_unsigned()) s.seed = j["seed"].get<std::uint64_t>();
  return s;
}

DensityMatrix to_density_matrix(const StateFile& s) {
  if (s.matrix.rows() != s.matrix.cols()) {
    throw DimensionError("state matrix is " + std::to_string(s.matrix.rows()) + "×" +
                         std::to_string(s.matrix.cols()) + ", not square");
  }
  return DensityMatrix(s.matrix, s.dims);
}

Json map_to_json(const LinearMap& m) {
  Json j;
  j["src_dim"] = m.src_dim();
  j["dst"] = Json::array({m.dst_rows(), m.dst_cols()});
  Json flat = Json::array();
  const CMatrix& s = m.superop();
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index k = 0; k < s.cols(); ++k) flat.push_back(complex_to_json(s(i, k)));
  j["superop"] = std::move(flat);
  if (const auto& kr = m.kraus()) {
    Json ops = Json::array();
    for (const auto& op : kr->ops) ops.push_back(matrix_to_json(op));
    j["kraus"] = {{"eta", numbers(kr->eta)}, {"K", std::move(ops)}};
  }
  return j;
}

LinearMap map_from_json(const Json& j) {
  const std::size_t n = size_from(field(j, "src_dim"), "src_dim");
  const Json& dst = field(j, "dst");
  if (!dst.is_array() || dst.size() != 2) throw FormatError("dst must be [rows, cols]");
  const std::size_t r = size_from(dst[0], "dst rows");
  const std::size_t c = size_from(dst[1], "dst cols");
  const Json& flat = field(j, "superop");
  if (!flat.is_array() || flat.size() != r * c * n * n) {
    throw FormatError("superop must hold " + std::to_string(r * c * n * n) + " entries");
  }
  CMatrix s(idx(r * c), idx(n * n));
  std::size_t at = 0;
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index k = 0; k < s.cols(); ++k) s(i, k) = complex_from_json(flat[at++]);
  LinearMap m(n, r, c, std::move(s));
  if (j.contains("kraus")) {
    const Json& kr = j["kraus"];
    KrausPairDecomposition d;
    d.eta = numbers_from(field(kr, "eta"), "kraus.eta");
    for (const auto& op : field(kr, "K")) d.ops.push_back(matrix_from_json(op));
    if (d.eta.size() != d.ops.size()) throw FormatError("kraus.eta and kraus.K differ in length");
    const LinearMap check = map_from_kraus_pairs(d);
    if (check.dst_rows() != r || check.dst_cols() != c || check.src_dim() != n ||
        max_abs(check.superop() - m.superop()) > 1e-10) {
      throw FormatError("kraus form disagrees with superop");
    }
    m.set_kraus(std::move(d));
  }
  return m;
}

Json network_to_json(const DilationUnitary& d, bool with_unitary, std::size_t cap) {
  Json j;
  j["a_minus"] = number(d.povm.a_minus);
  j["a_plus"] = number(d.povm.a_plus);
  j["lambdas"] = numbers(d.lambdas);
  j["thetas"] = numbers(d.thetas);
  j["uprime"] = matrix_to_json(d.uprime);
  if (with_unitary && 2 * d.dim() <= cap) j["u_a"] = matrix_to_json(d.u_a());
  return j;
}

NetworkExport network_from_json(const Json& j) {
  NetworkExport e;
  e.a_minus = field(j, "a_minus").get<double>();
  e.a_plus = field(j, "a_plus").get<double>();
  e.lambdas = numbers_from(field(j, "lambdas"), "lambdas");
  e.thetas = numbers_from(field(j, "thetas"), "thetas");
  e.uprime = matrix_from_json(field(j, "uprime"));
  if (static_cast<std::size_t>(e.uprime.rows()) != e.lambdas.size() ||
      e.thetas.size() != e.lambdas.size()) {
    throw FormatError("lambdas, thetas and uprime disagree in size");
  }
  if (j.contains("u_a")) e.u_a = matrix_from_json(j["u_a"]);
  return e;
}

const char* to_string(Verdict v) { return v == Verdict::entangled ? "entangled" : "not_detected"; }
const char* to_string(Route r) { return r == Route::network ? "network" : "direct"; }

Json record_to_json(const MomentRecord& r) {
  Json j;
  j["k"] = r.k;
  j["route"] = to_string(r.route);
  j["a_minus"] = number(r.a_minus);
  j["a_plus"] = number(r.a_plus);
  j["v"] = number(r.v);
  j["p0_hat"] = number(r.p0_hat);
  j["shots"] = r.shots;
  j["alpha_k"] = number(r.alpha);
  j["std_error"] = number(r.std_error);
  j["visibility_clamped"] = r.visibility_clamped;
  return j;
}

Json report_to_json(const DetectionReport& r) {
  Json j;
  j["schema"] = 1;
  j["criterion"] = {
      {"kind", r.criterion.kind == CriterionKind::positive_map ? "positive_map" : "contraction"},
      {"name", r.criterion.name}};
  j["mode"] = mode_to_json(r.mode);
  j["moments"] = numbers(r.moments.values);
  j["moment_std_errors"] = numbers(r.moments.std_errors);
  j[r.criterion.kind == CriterionKind::positive_map ? "spectrum" : "gammas"] =
      numbers(r.spectrum.eigenvalues);
  j["residual"] = number(r.spectrum.residual);
  j["statistic"] = number(r.statistic);
  j["threshold"] = number(r.threshold);
  j["margin"] = number(r.margin);
  j["gate"] = number(r.gate);
  j["std_error"] = number(r.std_error);
  j["verdict"] = to_string(r.verdict);
  j["calibration_ok"] = r.calibration_ok;
  j["bootstrap_failures"] = r.bootstrap_failures;
  Json records = Json::array();
  for (const auto& rec : r.records) records.push_back(record_to_json(rec));
  j["records"] = std::move(records);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write to " + path + " failed");
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace mapnet
