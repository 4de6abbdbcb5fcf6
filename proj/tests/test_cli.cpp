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

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "mapnet/json_io.hpp"
#include "mapnet/states.hpp"
#include "oracles.hpp"

namespace mapnet {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(MAPNET_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mapnet_cli_" + std::to_string(getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::string& name, const std::string& args) {
    const auto r = run("generate " + args + " --out " + path(name));
    EXPECT_EQ(r.status, 0) << args;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateFamilies) {
  const auto singlet = to_density_matrix(state_from_json(parse_json(read_file(generate("w1.json", "--family werner --p 1")))));
  EXPECT_LT(max_abs(singlet.mat() - bell_state(3).mat()), 1e-15);
  const auto mixed = to_density_matrix(state_from_json(parse_json(read_file(generate("w0.json", "--family werner --p 0")))));
  EXPECT_LT(max_abs(mixed.mat() - CMatrix::Identity(4, 4) / 4.0), 1e-15);
  const auto rnd = state_from_json(parse_json(read_file(generate("r.json", "--family random --dims 2,2 --seed 5"))));
  EXPECT_NO_THROW(to_density_matrix(rnd));
  EXPECT_EQ(rnd.seed, std::optional<std::uint64_t>(5));
  generate("iso.json", "--family isotropic --fidelity 0.7 --d 3");
  generate("bell.json", "--family bell --index 0");
  EXPECT_EQ(run("generate --family werner --p 1.5").status, 1);
}

TEST_F(Cli, MomentsSingletPartialTranspose) {
  const std::string s = generate("s.json", "--family werner --p 1");
  const auto r = run("moments --state " + s + " --map partial_transpose --k-max 4");
  ASSERT_EQ(r.status, 0);
  const Json j = parse_json(r.out);
  const double expect[] = {1.0, 1.0, 0.25, 0.25};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(j["moments"][k]["alpha_k"].get<double>(), expect[k], 1e-10);
  EXPECT_TRUE(j["moments"][1]["network"].contains("thetas"));
}

TEST_F(Cli, MomentsIdentityOnMaximallyMixed) {
  const std::string s = generate("m.json", "--family werner --p 0");
  const auto r = run("moments --state " + s + " --map identity --k-max 3 --csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,route,alpha_k,alpha_k_shots,std_error");
  const Json j = parse_json(run("moments --state " + s + " --map identity --k-max 3").out);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(j["moments"][k - 1]["alpha_k"].get<double>(), std::pow(4.0, 1 - k), 1e-12);
}

TEST_F(Cli, BadStateFileNamesProperty) {
  write_file(path("bad.json"), R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})");
  const auto r = run("moments --state " + path("bad.json"), true);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("trace"), std::string::npos);
  write_file(path("neg.json"), R"({"dims": [2], "matrix": [[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})");
  const auto n = run("detect --state " + path("neg.json"), true);
  EXPECT_EQ(n.status, 1);
  EXPECT_NE(n.out.find("psd"), std::string::npos);
  EXPECT_EQ(run("detect --state " + path("missing.json")).status, 1);
}

TEST_F(Cli, DetectExamples) {
  const std::string w = generate("w.json", "--family werner --p 0.6");
  Json j = parse_json(run("detect --state " + w + " --criterion ppt").out);
  EXPECT_EQ(j["verdict"], "entangled");
  EXPECT_NEAR(j["statistic"].get<double>(), (1.0 - 1.8) / 4.0, 1e-7);

  const std::string b = generate("b.json", "--family bell --index 0");
  j = parse_json(run("detect --state " + b + " --criterion realignment").out);
  EXPECT_EQ(j["verdict"], "entangled");
  EXPECT_NEAR(j["statistic"].get<double>(), 2.0, 1e-7);

  const std::string m = generate("m.json", "--family werner --p 0");
  const auto text = run("detect --state " + m + " --criterion ppt --text");
  EXPECT_EQ(text.status, 0);  // verdict is data, not status
  EXPECT_NE(text.out.find("verdict: not_detected"), std::string::npos);
  EXPECT_NE(text.out.find("margin:"), std::string::npos);
  EXPECT_NE(text.out.find("statistic:"), std::string::npos);

  j = parse_json(run("detect --state " + b + " --criterion reduction").out);
  EXPECT_EQ(j["verdict"], "entangled");
  j = parse_json(run("detect --state " + b + " --criterion positive-map --map partial_transpose").out);
  EXPECT_EQ(j["criterion"]["name"], "partial_transpose");
  EXPECT_EQ(j["verdict"], "entangled");
}

TEST_F(Cli, DetectIsDeterministic) {
  const std::string w = generate("w.json", "--family werner --p 0.8");
  const auto a = run("detect --state " + w + " --criterion ppt --shots 100000 --seed 7");
  const auto b = run("detect --state " + w + " --criterion ppt --shots 100000 --seed 7");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(dump(parse_json(a.out)), a.out);
  const auto c = run("detect --state " + w + " --criterion ppt --shots 100000 --seed 8");
  EXPECT_NE(a.out, c.out);
}

TEST_F(Cli, SizeCapExitCode) {
  const std::string b = generate("b.json", "--family bell --index 0");
  EXPECT_EQ(run("detect --state " + b + " --criterion realignment --shots 1000 --seed 1").status, 2);
  EXPECT_EQ(run("network --map partial_transpose --k 6").status, 2);
  const std::string cmd = "MAPNET_SIZE_CAP=8 " + std::string(MAPNET_CLI) +
                          " network --map partial_transpose --k 2 >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(st), 2);
}

TEST_F(Cli, NetworkExport) {
  Json j = parse_json(run("network --map partial_transpose --k 2 --with-unitary").out);
  EXPECT_EQ(j["thetas"].size(), 16u);
  const NetworkExport e = network_from_json(j);
  ASSERT_TRUE(e.u_a.has_value());
  EXPECT_LT(max_abs(reassemble_u_a(e.lambdas, e.uprime) - *e.u_a), 1e-8);

  j = parse_json(run("network --map identity --k 1 --dims 2").out);
  ASSERT_EQ(j["thetas"].size(), 2u);
  for (const auto& t : j["thetas"]) EXPECT_NEAR(t.get<double>(), 0.0, 1e-7);

  const auto text = run("network --map partial_transpose --k 2 --text");
  EXPECT_NE(text.out.find("R_y("), std::string::npos);
}

TEST_F(Cli, FileMap) {
  write_file(path("t.json"), dump(map_to_json(transpose_map(2))));
  const std::string w = generate("w.json", "--family werner --p 1");
  const Json j = parse_json(run("detect --state " + w + " --criterion positive-map --map file:" + path("t.json")).out);
  EXPECT_NEAR(j["statistic"].get<double>(), -0.5, 1e-7);
  const Json m = parse_json(run("moments --state " + w + " --map file:" + path("t.json") + " --k-max 2").out);
  EXPECT_NEAR(m["moments"][1]["alpha_k"].get<double>(), 1.0, 1e-12);
}

TEST_F(Cli, HelpListsFlags) {
  std::string all = run("--help").out;
  for (const char* sub : {"generate", "moments", "detect", "network"}) all += run(std::string(sub) + " --help").out;
  for (const char* flag : {"--state", "--map", "--shots", "--seed", "--json", "--text", "--csv", "--out",
                           "--k-max", "--k", "--criterion", "--family", "--p", "--fidelity", "--d",
                           "--index", "--dims", "--with-unitary", "MAPNET_SIZE_CAP"}) {
    EXPECT_NE(all.find(flag), std::string::npos) << flag;
  }
}

}  // namespace
}  // namespace mapnet
