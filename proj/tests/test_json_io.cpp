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

#include <random>

#include <gtest/gtest.h>

#include "mapnet/errors.hpp"
#include "mapnet/json_io.hpp"
#include "mapnet/states.hpp"
#include "oracles.hpp"

namespace mapnet {
namespace {

TEST(MatrixJson, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  const CMatrix a = oracle::gaussian(3, 4, rng);
  const CMatrix b = matrix_from_json(parse_json(dump(matrix_to_json(a))));
  EXPECT_EQ(max_abs(a - b), 0.0);
  EXPECT_THROW(matrix_from_json(parse_json("[[[1,0]],[[1,0],[2,0]]]")), FormatError);
  EXPECT_THROW(matrix_from_json(parse_json("[[[1,0,3]]]")), FormatError);
  EXPECT_THROW(parse_json("{not json"), FormatError);
}

TEST(StateJson, RoundTripAndValidation) {
  const DensityMatrix rho = random_state({2, 3}, 4);
  StateFile s{rho.dims(), rho.mat(), "random", "random", 4};
  const std::string text = dump(state_to_json(s));
  const StateFile back = state_from_json(parse_json(text));
  EXPECT_EQ(back.dims, rho.dims());
  EXPECT_EQ(back.seed, std::optional<std::uint64_t>(4));
  EXPECT_EQ(max_abs(to_density_matrix(back).mat() - rho.mat()), 0.0);
  EXPECT_EQ(dump(state_to_json(back)), text);

  StateFile bad = s;
  bad.matrix *= 2.0;
  try {
    to_density_matrix(bad);
    FAIL();
  } catch (const InvalidStateError& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
  EXPECT_THROW(state_from_json(parse_json(R"({"matrix": [[[1,0]]]})")), FormatError);
}

TEST(MapJson, RoundTripWithKraus) {
  const LinearMap r = reduction_map(2);
  const LinearMap back = map_from_json(parse_json(dump(map_to_json(r))));
  EXPECT_EQ(back.src_dim(), 2u);
  EXPECT_EQ(max_abs(back.superop() - r.superop()), 0.0);
  ASSERT_TRUE(back.kraus().has_value());
  EXPECT_EQ(back.kraus()->ops.size(), r.kraus()->ops.size());

  const LinearMap rect = realignment_map(2, 3);
  const Json j = map_to_json(rect);
  EXPECT_EQ(j["dst"][0], 4);
  EXPECT_EQ(j["dst"][1], 9);
  EXPECT_EQ(max_abs(map_from_json(j).superop() - rect.superop()), 0.0);

  Json broken = j;
  broken["superop"].erase(0);
  EXPECT_THROW(map_from_json(broken), FormatError);
}

TEST(NetworkJson, ExportReimportReassembles) {
  const LinearMap theta = extend_with_identity(transpose_map(2), 2);
  const DilationUnitary d = dilation_unitary(binary_povm(collective_observable(theta, 2)));
  const Json j = network_to_json(d, true);
  EXPECT_EQ(j["thetas"].size(), 16u);
  ASSERT_TRUE(j.contains("u_a"));
  const NetworkExport e = network_from_json(parse_json(dump(j)));
  EXPECT_LT(max_abs(reassemble_u_a(e.lambdas, e.uprime) - d.u_a()), 1e-8);
  EXPECT_LT(max_abs(*e.u_a - d.u_a()), 1e-15);
  EXPECT_FALSE(network_to_json(d, true, 16).contains("u_a"));
  EXPECT_FALSE(network_to_json(d, false).contains("u_a"));
}

TEST(ReportJson, SchemaAndByteStableRoundTrip) {
  const auto r = run_positive_map_test(werner_state(0.6), transpose_map(2), ShotsMode{10000, 2}, "ppt");
  const Json j = report_to_json(r);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["verdict"], to_string(r.verdict));
  EXPECT_EQ(j["mode"]["type"], "shots");
  EXPECT_EQ(j["records"].size(), 4u);
  for (const char* key : {"k", "a_minus", "a_plus", "v", "p0_hat", "shots", "alpha_k"}) {
    EXPECT_TRUE(j["records"][0].contains(key)) << key;
  }
  const std::string text = dump(j);
  EXPECT_EQ(dump(parse_json(text)), text);

  const auto c = run_contraction_test(bell_state(0), realignment_map(2, 2), ExactMode{}, "realignment");
  const Json cj = report_to_json(c);
  EXPECT_TRUE(cj.contains("gammas"));
  EXPECT_EQ(cj["records"][3]["route"], "direct");
  const std::string ctext = dump(cj);
  EXPECT_EQ(dump(parse_json(ctext)), ctext);
}

TEST(ReportJson, NonFiniteBecomesNull) {
  DetectionReport r{{CriterionKind::positive_map, "x"}, ExactMode{}, {}, {}, {}};
  r.std_error = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(report_to_json(r)["std_error"].is_null());
}

}  // namespace
}  // namespace mapnet
