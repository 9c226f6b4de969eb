// Copyright 2026 The pointpoly Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pointpoly/cli.hpp"

namespace fs = std::filesystem;
using pointpoly::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("pointpoly_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string path(const std::string& rel) const { return (root_ / rel).string(); }

  void synth(const std::string& dir, const std::string& count = "4") {
    const Result r = invoke({"synth", "--count", count, "--profile", "mixed", "--seed", "7",
                             "--out", path(dir)});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path root_;
};

}  // namespace

TEST_F(CliTest, SynthWritesCorpusIdempotently) {
  synth("a");
  synth("b");
  std::size_t pgms = 0;
  for (const auto& e : fs::directory_iterator(path("a"))) pgms += e.path().extension() == ".pgm";
  EXPECT_EQ(pgms, 4u);
  for (const auto& e : fs::directory_iterator(path("a"))) {
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(path("b")) / e.path().filename()));
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({"synth", "--count", "0", "--out", path("x")}).code, 2);
  EXPECT_EQ(invoke({"synth", "--count", "2", "--profile", "spiral", "--out", path("x")}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, GenerateThenEval) {
  synth("corpus");
  const std::string manifest = path("corpus/manifest.json");
  Result g = invoke({"generate", "--manifest", manifest, "--points-from", "centroid",
                     "--recognizer", "oracle", "--out", path("preds"), "--overlay-dir",
                     path("svg")});
  ASSERT_EQ(g.code, 0) << g.err;
  const std::string first = slurp(path("preds/predictions.json"));
  EXPECT_FALSE(first.empty());
  EXPECT_TRUE(fs::exists(path("svg/scene_00000.svg")));

  g = invoke({"generate", "--manifest", manifest, "--out", path("preds")});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(slurp(path("preds/predictions.json")), first);

  const Result e = invoke({"eval", "--manifest", manifest, "--pred", path("preds/predictions.json"),
                           "--dist", "5,10,20,30"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(fs::exists(path("preds/report.json")));
}

TEST_F(CliTest, StageSwitchesAndOverrides) {
  synth("corpus", "2");
  const std::string manifest = path("corpus/manifest.json");
  EXPECT_EQ(invoke({"generate", "--manifest", manifest, "--out", path("p1"), "--no-agm", "--no-prm"}).code, 0);
  EXPECT_EQ(invoke({"generate", "--manifest", manifest, "--out", path("p2"), "--tau", "0.05"}).code, 0);
  EXPECT_EQ(invoke({"generate", "--manifest", manifest, "--out", path("p3"), "--ablate-random-anchor", "5"}).code, 0);
  EXPECT_EQ(invoke({"generate", "--manifest", manifest, "--out", path("p4"), "--no-agm", "--no-pgm",
                    "--no-prm"}).code,
            2);
  EXPECT_EQ(invoke({"generate", "--manifest", manifest, "--out", path("p5"), "--tau", "1.5"}).code, 2);
}

TEST_F(CliTest, EvalIdentityIsPerfect) {
  synth("corpus", "3");
  const std::string manifest = path("corpus/manifest.json");
  const Result e = invoke({"eval", "--manifest", manifest, "--pred", manifest, "--out",
                           path("report.json"), "--dist", "5,10,20,30"});
  ASSERT_EQ(e.code, 0) << e.err;
  std::size_t ones = 0;
  for (auto p = e.out.find("100.0"); p != std::string::npos; p = e.out.find("100.0", p + 1)) ++ones;
  EXPECT_GE(ones, 8u * 3u);
}

TEST_F(CliTest, IoAndSchemaErrors) {
  synth("corpus", "1");
  const std::string manifest = path("corpus/manifest.json");
  EXPECT_EQ(invoke({"eval", "--manifest", manifest, "--pred", path("nope.json")}).code, 3);
  std::ofstream(path("broken.json")) << "[{\"image_path\": 1}]";
  EXPECT_EQ(invoke({"eval", "--manifest", manifest, "--pred", path("broken.json")}).code, 4);
  EXPECT_EQ(invoke({"generate", "--manifest", path("broken.json"), "--out", path("o")}).code, 4);
}

TEST_F(CliTest, AblateFourRows) {
  synth("corpus", "3");
  const Result a = invoke({"ablate", "--manifest", path("corpus/manifest.json"), "--out", path("abl")});
  ASSERT_EQ(a.code, 0) << a.err;
  for (const char* row : {"full", "-AGM", "-PGM", "-PRM"}) EXPECT_NE(a.out.find(row), std::string::npos);
  EXPECT_TRUE(fs::exists(path("abl/ablation.json")));
}
