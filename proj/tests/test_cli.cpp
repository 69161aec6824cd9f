// Copyright 2026 The trinecode Authors
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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trinecode/cli.hpp"

namespace trinecode::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Cli, ReportCsvHasGain) {
  const CliRun r = invoke({"report"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gain,0.0391"), std::string::npos);
}

TEST(Cli, ReportJson) {
  const CliRun r = invoke({"report", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"i_acc", "c1", "i2", "i2_per_letter", "gain"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_NEAR(j["gain"].get<double>(), 0.0391, 5e-5);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"report", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "acc", "--points", "0"}).code, 2);
  EXPECT_EQ(invoke({"circuit", "bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"report", "--unknown"}).code, 2);
  EXPECT_EQ(invoke({"report", "-f", "csv"}).code, 2);
  EXPECT_EQ(invoke({"expsim", "srm", "--visibility", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, SweepSrmPeaksAtZero) {
  const CliRun r = invoke({"sweep", "srm", "--points", "121"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 122u);
  EXPECT_EQ(ls[0], "phi_off,bits");
  double best = -1.0;
  std::string best_phi;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    const double v = std::stod(ls[i].substr(comma + 1));
    if (v > best) {
      best = v;
      best_phi = ls[i].substr(0, comma);
    }
  }
  EXPECT_EQ(best_phi, "0");
}

TEST(Cli, SweepAccAtZero) {
  const CliRun r = invoke({"sweep", "acc", "--points", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out)[2], "0,0.5849625007");
}

TEST(Cli, CircuitReports) {
  const CliRun s = invoke({"circuit", "srm"});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("# outcome_check pass"), std::string::npos);
  const auto j = nlohmann::json::parse(invoke({"circuit", "srm", "--format", "json"}).out);
  EXPECT_LE(j["residual"].get<double>(), 1e-10);
  const CliRun a = invoke({"circuit", "acc"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("# outcome_check pass"), std::string::npos);
}

TEST(Cli, QchcSolve) {
  const CliRun r = invoke({"qchc", "--rate", "0.62", "--solve", "1e-9"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classical,0.62,1e-09,57295"), std::string::npos);
  EXPECT_NE(r.out.find("qchc,0.62,1e-09,614"), std::string::npos);
}

TEST(Cli, QchcTableAndCeiling) {
  const CliRun r = invoke({"qchc", "--rate", "0.1", "--n", "100"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[1].rfind("classical,0.1,0.1,100,", 0), 0u);
  EXPECT_EQ(ls[2].rfind("qchc,0.1,", 0), 0u);
  const CliRun bad = invoke({"qchc", "--rate", "0.9"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("ceiling"), std::string::npos);
}

TEST(Cli, SrmTableAndReliability) {
  const CliRun t = invoke({"srm-table"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(lines(t.out).size(), 13u);
  EXPECT_NE(t.out.find("00,00,0.9714045208"), std::string::npos);
  const CliRun e = invoke({"reliability", "--scheme", "qchc", "--rate", "0.1585"});
  ASSERT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("qchc,0.1585,0.8415"), std::string::npos);
  const CliRun g = invoke({"reliability", "--points", "10", "--format", "json"});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(nlohmann::json::parse(g.out).size(), 10u);
}

TEST(Cli, ExpsimDeterministicWithSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "trinecode_cli_test";
  std::filesystem::create_directories(dir);
  const auto p1 = dir / "a.csv";
  const auto p2 = dir / "b.csv";
  const CliRun a = invoke({"expsim", "srm", "--seed", "7", "--out", p1.string()});
  const CliRun b = invoke({"expsim", "srm", "--seed", "7", "--out", p2.string()});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_EQ(slurp(p1).rfind("input,outcome,count\n", 0), 0u);
  const auto side = nlohmann::json::parse(slurp(p1.string() + ".json"));
  EXPECT_EQ(side["seed"].get<int>(), 7);
  EXPECT_DOUBLE_EQ(side["duration"].get<double>(), 5.0);
  EXPECT_TRUE(side.contains("noise"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExpsimIdealNearTheory) {
  const CliRun r = invoke({"expsim", "srm", "--visibility", "1", "--dark", "0", "--background", "0", "--seed", "7"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["bits"].get<double>(), 1.3690684, 0.005);
  const CliRun c = invoke({"expsim", "c1", "--visibility", "0.99"});
  const double bits = nlohmann::json::parse(c.out)["bits"].get<double>();
  EXPECT_GE(bits, 0.63);
  EXPECT_LE(bits, 0.6454);
}

}  // namespace
}  // namespace trinecode::cli
