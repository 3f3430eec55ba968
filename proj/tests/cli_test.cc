// Copyright 2026 The Geopart Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geopart/cli.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_util.h"

namespace geopart {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    train_ = (dir_.path() / "train.jsonl").string();
    test_ = (dir_.path() / "test.jsonl").string();
    params_ = (dir_.path() / "params.json").string();
    ds_ = (dir_.path() / "ds").string();
    sets_ = (dir_.path() / "sets").string();
    ASSERT_EQ(Cli({"synth", "--train-out", train_, "--test-out", test_, "--train", "1500",
                   "--test", "60", "--clusters", "10", "--dim", "4", "--seed", "5"})
                  .code,
              kExitOk);
    std::ofstream(params_) << R"({"sets":[
      {"set_id":"v","num_geoclasses":12,"image_feature_dims":"all","alpha":[1,0,0],"beta":[1,0],"seed":1},
      {"set_id":"g","num_geoclasses":15,"image_feature_dims":0,"alpha":[1,0,0],"beta":[0,1],"seed":2}]})";
  }

  void BuildAndGenerate() {
    const CliRun b = Cli({"build", "--input", train_, "--out", ds_, "--level", "4", "--seed", "3"});
    ASSERT_EQ(b.code, kExitOk) << b.err;
    const CliRun g = Cli({"gen-sets", "--dataset", ds_, "--params", params_, "--out", sets_});
    ASSERT_EQ(g.code, kExitOk) << g.err;
  }

  testing::TempDir dir_{"cli"};
  std::string train_, test_, params_, ds_, sets_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli({}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"bogus"}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"build", "--input", train_}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, BuildRejectsEmptyAndMissingInput) {
  const std::string empty = (dir_.path() / "empty.jsonl").string();
  std::ofstream(empty) << "garbage\n";
  const CliRun r = Cli({"build", "--input", empty, "--out", ds_});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("no valid records"), std::string::npos);
  EXPECT_EQ(Cli({"build", "--input", "/nonexistent.jsonl", "--out", ds_}).code,
            kExitInvalidInput);
  EXPECT_EQ(Cli({"build", "--input", train_, "--out", ds_, "--strict", "--input", empty}).code,
            kExitInvalidInput);
}

TEST_F(CliTest, FullPipeline) {
  BuildAndGenerate();
  const auto summary = nlohmann::json::parse(Slurp(fs::path(sets_) / "summary.json"));
  EXPECT_EQ(summary["sets"].size(), 2u);
  EXPECT_EQ(summary["sets"][1]["class_count"], 15);
  EXPECT_EQ(summary["seed"], 3);  // inherited from the dataset manifest

  const std::string models = (dir_.path() / "models").string();
  ASSERT_EQ(Cli({"train", "--dataset", ds_, "--sets", sets_, "--out", models}).code, kExitOk);
  const std::string pred = (dir_.path() / "pred.jsonl").string();
  const CliRun p = Cli({"predict", "--dataset", ds_, "--sets", sets_, "--queries", test_,
                     "--models", models, "--out", pred});
  ASSERT_EQ(p.code, kExitOk) << p.err;
  EXPECT_NE(p.out.find("fine index: built"), std::string::npos);
  EXPECT_TRUE(fs::exists(pred + ".manifest.json"));

  // Second run reuses the cached index and yields the same bytes.
  const std::string pred2 = (dir_.path() / "pred2.jsonl").string();
  const CliRun p2 = Cli({"predict", "--dataset", ds_, "--sets", sets_, "--queries", test_,
                      "--out", pred2});
  ASSERT_EQ(p2.code, kExitOk) << p2.err;
  EXPECT_NE(p2.out.find("fine index: cached"), std::string::npos);
  EXPECT_EQ(Slurp(pred), Slurp(pred2));

  const std::string csv = (dir_.path() / "eval.csv").string();
  const CliRun e = Cli({"eval", "--predictions", pred, "--truth", test_, "--radii",
                     "100,750,2500", "--csv", csv, "--label", "fused"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_EQ(Slurp(csv).rfind("model,100km,750km,2500km\nfused,", 0), 0u);

  const std::string geo = (dir_.path() / "p.geojson").string();
  ASSERT_EQ(Cli({"export", "--predictions", pred, "--truth", test_, "--out", geo}).code,
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(Slurp(geo))["features"].size(), 120u);
  ASSERT_EQ(Cli({"export", "--set", (fs::path(sets_) / "set_v.json").string(), "--out", geo})
                .code,
            kExitOk);
  EXPECT_EQ(nlohmann::json::parse(Slurp(geo))["features"].size(), 12u);
}

TEST_F(CliTest, ExternalScoresAndCoverage) {
  BuildAndGenerate();
  const std::string scores = (dir_.path() / "scores.jsonl").string();
  {
    std::ofstream out(scores);
    out << R"({"query_id":"only","set_id":"v","scores":[)";
    for (int i = 0; i < 12; ++i) out << (i ? "," : "") << (i == 3 ? 1 : 0);
    out << "]}\n" << R"({"query_id":"only","set_id":"g","scores":[)";
    for (int i = 0; i < 15; ++i) out << (i ? "," : "") << 1;
    out << "]}\n";
  }
  const std::string q = (dir_.path() / "q.jsonl").string();
  std::ofstream(q) << "{\"query_id\":\"only\"}\n";
  const std::string pred = (dir_.path() / "ext.jsonl").string();
  const CliRun ok = Cli({"predict", "--dataset", ds_, "--sets", sets_, "--queries", q,
                      "--scores", scores, "--out", pred, "--mode", "simple"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  std::ofstream(q, std::ios::app) << "{\"query_id\":\"other\"}\n";
  const CliRun missing = Cli({"predict", "--dataset", ds_, "--sets", sets_, "--queries", q,
                           "--scores", scores, "--out", pred});
  EXPECT_EQ(missing.code, kExitInvalidInput);
  EXPECT_NE(missing.err.find("other"), std::string::npos);
}

TEST_F(CliTest, SetsFromAnotherDatasetAreRejected) {
  BuildAndGenerate();
  const std::string other = (dir_.path() / "ds2").string();
  ASSERT_EQ(Cli({"build", "--input", train_, "--out", other, "--level", "3"}).code, kExitOk);
  const CliRun r = Cli({"predict", "--dataset", other, "--sets", sets_, "--queries", test_,
                     "--out", (dir_.path() / "x.jsonl").string()});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("different dataset"), std::string::npos);
}

TEST_F(CliTest, StaleIndexCacheIsRebuilt) {
  BuildAndGenerate();
  const fs::path cache = fs::path(sets_) / "fine_index.json";
  std::ofstream(cache) << "{\"not\":\"an index\"}";
  const CliRun r = Cli({"predict", "--dataset", ds_, "--sets", sets_, "--queries", test_,
                     "--out", (dir_.path() / "x.jsonl").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("fine index: built"), std::string::npos);
}

TEST_F(CliTest, SweepAndConfigFile) {
  BuildAndGenerate();
  const std::string cfg = (dir_.path() / "sweep.toml").string();
  std::ofstream(cfg) << "[sweep]\ncounts = [1, 8]\nradii = [500, 2500]\n";
  const CliRun r = Cli({"--config", cfg, "sweep", "--dataset", ds_, "--params", params_,
                     "--queries", test_, "--set-id", "g"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("classes,500km,2500km\n1,", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\n8,"), std::string::npos);
}

}  // namespace
}  // namespace geopart
