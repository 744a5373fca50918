//
// Copyright 2026 The impsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "impsel/graph.hpp"
#include "test_util.hpp"

namespace impsel {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.push_back("--json");
  Result r = run_cli(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(CliTest, RunStar) {
  auto j = run_json({"run", "--graph", testing::fixture_path("star5.g"), "--T", "3", "--t", "2"});
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["T"], 3);
  EXPECT_EQ(j["t"], 2);
  EXPECT_EQ(j["selected"], nlohmann::json::array({1}));
  EXPECT_EQ(j["selected_indegree"], 4);
  EXPECT_EQ(j["max_indegree"], 4);
  EXPECT_EQ(j["gap"], 0);
  ASSERT_EQ(j["trace"].size(), 1u);
  EXPECT_EQ(j["trace"][0]["i"], 0);
  EXPECT_EQ(j["trace"][0]["v"], 1);
  EXPECT_EQ(j["trace"][0]["dstar"], 4);
  EXPECT_EQ(j["final_degrees"], nlohmann::json::array({4, 0, 0, 0, 0}));
}

TEST(CliTest, RunCascadeAndMechanism) {
  auto j = run_json({"run", "--graph", testing::fixture_path("cascade5.g"), "--T", "2", "--t", "1"});
  EXPECT_EQ(j["selected"], nlohmann::json::array({5}));
  EXPECT_EQ(j["trace"].size(), 2u);
  auto k = run_json({"run", "--graph", testing::fixture_path("star5.g"), "--mechanism", "never"});
  EXPECT_EQ(k["selected"], nlohmann::json::array());
  EXPECT_EQ(k["gap"], 4);
  EXPECT_TRUE(k["T"].is_null());
}

TEST(CliTest, OutputIsByteIdenticalAcrossRuns) {
  std::vector<std::string> args{"audit", "impartiality", "--mechanism", "naive-sim:2", "--n", "6", "--k", "1", "--samples", "200", "--seed", "5", "--json"};
  Result a = run_cli(args);
  args.push_back("--jobs");
  args.push_back("3");
  Result b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, 1);
}

TEST(CliTest, PlanK1) {
  auto j = run_json({"plan", "--n", "100", "--k", "1"});
  EXPECT_EQ(j["t"], 10);
  EXPECT_EQ(j["T"], 16);
  EXPECT_EQ(j["alpha"], 24);
  EXPECT_EQ(j["certified"], true);
  Result text = run_cli({"plan", "--n", "100", "--k", "1"});
  EXPECT_NE(text.out.find("T=16 t=10"), std::string::npos);
  EXPECT_NE(text.out.find("certified=true"), std::string::npos);
  EXPECT_NE(text.out.find("alpha=24"), std::string::npos);
}

TEST(CliTest, PlanGeneralValidateAndDegenerate) {
  auto g = run_json({"plan", "--n", "100", "--kappa", "0", "--c", "1"});
  EXPECT_EQ(g["T"], 24);
  EXPECT_EQ(g["t"], 5);
  auto v = run_json({"plan", "--n", "100", "--T", "10", "--t", "10"});
  EXPECT_EQ(v["certified"], false);
  auto d = run_json({"plan", "--n", "2"});
  EXPECT_EQ(d["degenerate"], true);
  EXPECT_EQ(d["mechanism"], "never");
  auto k3 = run_json({"plan", "--n", "200", "--k", "3"});
  EXPECT_EQ(k3["plan"], "general");
}

TEST(CliTest, AuditExitCodes) {
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "twin:4,1", "--n", "5", "--k", "1", "--exhaustive"}).code, 0);
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "max-naive", "--n", "4", "--k", "1"}).code, 1);
  auto j = run_json({"audit", "impartiality", "--mechanism", "max-naive", "--n", "4", "--k", "1", "--max-reported", "2"}, 1);
  EXPECT_EQ(j["violation_count"], 194);
  EXPECT_EQ(j["violations"].size(), 2u);
  // Embedded graphs are canonical serializations.
  std::string a = j["violations"][0]["graph_a"];
  EXPECT_EQ(serialize_graph(parse_graph(a)), a);
}

TEST(CliTest, AuditGapTraceSymmetry) {
  auto g = run_json({"audit", "gap", "--mechanism", "follow:1", "--n", "4", "--positive-outdegree"});
  EXPECT_EQ(g["worst_gap"], 2);
  EXPECT_EQ(g["graphs_checked"], 2401);
  auto t = run_json({"audit", "trace", "--n", "20", "--k", "1", "--samples", "200", "--seed", "1"});
  EXPECT_EQ(t["failures"], 0);
  auto single = run_json({"audit", "trace", "--graph", testing::fixture_path("cascade5.g"), "--T", "2", "--t", "1"});
  EXPECT_EQ(single["ok"], true);
  auto s = run_json({"audit", "symmetry", "--mechanism", "majority", "--n", "3", "--k", "1"});
  EXPECT_EQ(s["ok"], true);
}

TEST(CliTest, Partitions) {
  auto j = run_json({"partitions", "--n", "3", "--certificate"});
  EXPECT_EQ(j["certificate"]["rhs_total"], "-1");
  EXPECT_EQ(j["certificate"]["cancellation_ok"], true);
  EXPECT_EQ(j["certificate"]["parity"], "odd");
  std::vector<std::string> mult;
  for (const auto& row : j["compositions"]) mult.push_back(row["multiplier"]);
  EXPECT_EQ(mult, (std::vector<std::string>{"-6", "3", "3", "-1"}));
  EXPECT_EQ(j["fubini"], "13");
  auto t = run_json({"partitions", "--n", "4", "--transitions"});
  EXPECT_EQ(t["structure"]["unique_partner"], true);
  Result text = run_cli({"partitions", "--n", "3", "--certificate"});
  EXPECT_NE(text.out.find("rhs_total=-1"), std::string::npos);
  EXPECT_NE(text.out.find("cancellation_ok=true"), std::string::npos);
}

TEST(CliTest, Reduce) {
  const std::string path = ::testing::TempDir() + "/impsel_pair.g";
  {
    std::ofstream f(path);
    f << "n 2\ne 1 2\n";
  }
  Result iso = run_cli({"reduce", "--graph", path, "--n", "4", "--mode", "isolated"});
  EXPECT_EQ(iso.code, 0);
  EXPECT_EQ(iso.out, "n 4\ne 1 2\n");
  Result inn = run_cli({"reduce", "--graph", path, "--n", "4", "--mode", "inneighbors"});
  EXPECT_EQ(inn.out, "n 4\ne 1 2\ne 2 3\ne 3 1\ne 3 2\ne 4 1\ne 4 2\n");
  Result bad = run_cli({"reduce", "--graph", testing::fixture_path("star5.g"), "--n", "7", "--mode", "inneighbors"});
  EXPECT_EQ(bad.code, 2);
  std::remove(path.c_str());
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
  EXPECT_EQ(run_cli({"plan"}).code, 2);
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "never", "--n", "4", "--exhaustive", "--samples", "3"}).code, 2);
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "never", "--n", "4", "--samples", "3"}).code, 2);
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "twin:9,1", "--n", "4"}).code, 2);
  EXPECT_EQ(run_cli({"audit", "impartiality", "--mechanism", "never", "--n", "4", "--k", "x"}).code, 2);
  EXPECT_EQ(run_cli({"run", "--graph", "/nonexistent.g", "--T", "1", "--t", "1"}).code, 2);
  EXPECT_EQ(run_cli({"run", "--graph", testing::fixture_path("star5.g"), "--T", "3"}).code, 2);
  EXPECT_EQ(run_cli({"run", "--graph", testing::fixture_path("star5.g"), "--T", "3", "--t", "2", "--mechanism", "never"}).code, 2);
  EXPECT_EQ(run_cli({"reduce", "--graph", testing::fixture_path("star5.g"), "--n", "7", "--mode", "sideways"}).code, 2);
  Result parse = run_cli({"run", "--graph", testing::fixture_path("naive_iter2_n4_a.g"), "--T", "9", "--t", "1"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_FALSE(parse.err.empty());
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace impsel
