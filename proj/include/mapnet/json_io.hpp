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

// JSON forms of states, maps, networks and reports.
//
// Complex numbers are [re, im] pairs; matrices are arrays of rows. Objects
// keep insertion order so that parse -> dump reproduces the same bytes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "mapnet/detect.hpp"
#include "mapnet/linear_map.hpp"
#include "mapnet/network.hpp"
#include "mapnet/tensor.hpp"

namespace mapnet {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const CMatrix& a);
/// Throws FormatError on ragged rows or malformed entries.
CMatrix matrix_from_json(const Json& j);

struct StateFile {
  Dims dims;
  CMatrix matrix;
  std::optional<std::string> label;
  std::optional<std::string> generator;
  std::optional<std::uint64_t> seed;
};

Json state_to_json(const StateFile& s);
/// Shape checks only.
StateFile state_from_json(const Json& j);
/// Parsed and validated; InvalidStateError names the failed property.
DensityMatrix to_density_matrix(const StateFile& s);

/// {"src_dim", "dst": [r, c], "superop": [...] row-major, "kraus"?}.
Json map_to_json(const LinearMap& m);
LinearMap map_from_json(const Json& j);

struct NetworkExport {
  double a_minus = 0.0;
  double a_plus = 0.0;
  std::vector<double> lambdas;
  std::vector<double> thetas;
  CMatrix uprime;
  std::optional<CMatrix> u_a;
};

/// U_A is included only when requested and 2·dim stays within the size cap.
Json network_to_json(const DilationUnitary& d, bool with_unitary, std::size_t cap = size_cap());
NetworkExport network_from_json(const Json& j);

Json record_to_json(const MomentRecord& r);
Json report_to_json(const DetectionReport& r);

const char* to_string(Verdict v);
const char* to_string(Route r);

/// Two-space indented dump with a trailing newline. Non-finite numbers
/// become null.
std::string dump(const Json& j);

/// Whole-file read/write. Throws Error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Parse with FormatError on malformed input.
Json parse_json(const std::string& text);

}  // namespace mapnet
