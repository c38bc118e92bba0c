// Copyright 2026 The cploss Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cploss_cli/cli.hpp"
#include "json.hpp"

namespace cploss::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  const Result r = call(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "cploss/1");
  return j;
}

// Header plus numeric rows; fails the test on ragged rows.
std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           const std::string& header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, header);
  const std::size_t width = std::count(header.begin(), header.end(), ',') + 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    EXPECT_EQ(row.size(), width);
    rows.push_back(row);
  }
  return rows;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cploss_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, Catalog) {
  const json j = call_json({"catalog"});
  EXPECT_GE(j.at("weights").size(), 8u);
  EXPECT_EQ(j.at("weights")[0].at("name"), "zero-one");
  EXPECT_EQ(j.at("links").back().at("name"), "canonical");
}

TEST(Cli, EvalPartialAndComposite) {
  const json a = call_json({"eval", "--loss", R"({"weight":{"name":"log"}})",
                            "--y", "-1", "--etahat", "0.3"});
  EXPECT_NEAR(a.at("value").get<double>(), -std::log(0.7), 1e-15);
  const json b = call_json({"eval", "--loss", R"({"weight":{"name":"log"}})",
                            "--y", "+1", "--link", "logit", "--v", "0"});
  EXPECT_NEAR(b.at("value").get<double>(), std::log(2.0), 1e-15);
  EXPECT_EQ(b.at("etahat").get<double>(), 0.5);
}

TEST(Cli, Risk) {
  const json j = call_json({"risk", "--loss", R"({"weight":{"name":"square"}})",
                            "--eta", "0.2", "--etahat", "0.7", "--bayes",
                            "--regret"});
  EXPECT_NEAR(j.at("regret").get<double>(), 0.125, 1e-15);
  EXPECT_NEAR(j.at("bayes_risk").get<double>(), 0.08, 1e-15);
}

TEST(Cli, CheckProper) {
  const std::string path = temp_path("partials.json");
  std::ofstream(path) << R"({"pos": "(1-p)^2/2", "neg": "p^2/2"})";
  const json j = call_json({"check-proper", "--partials", path, "--grid-size", "9"});
  EXPECT_TRUE(j.at("proper").get<bool>());
  EXPECT_EQ(j.at("weight").size(), 9u);
  const Result bad = call({"check-proper", "--strict", "--partials",
                           R"({"pos": "(1-p)^2", "neg": "p"})"});
  EXPECT_EQ(bad.code, kNegative);
}

TEST(Cli, CheckConvexityBoosting) {
  const std::string spec =
      R"({"weight":{"name":"boosting"},"link":{"name":"identity"}})";
  for (bool oracle : {false, true}) {
    std::vector<std::string> args = {"check-convexity", "--loss", spec};
    if (oracle) args.push_back("--oracle");
    const json j = call_json(args);
    EXPECT_FALSE(j.at("convex").get<bool>());
    ASSERT_FALSE(j.at("violations").empty());
    for (const auto& v : j.at("violations")) {
      const double x = v.at("x").get<double>();
      EXPECT_TRUE(x < 0.25 + 1e-3 || x > 0.75 - 1e-3) << x;
    }
  }
  EXPECT_EQ(call({"check-convexity", "--loss", spec, "--strict"}).code, kNegative);
  EXPECT_EQ(call({"check-convexity", "--loss",
                  R"({"weight":{"name":"log"},"link":{"name":"logit"}})", "--strict"})
                .code,
            kOk);
}

TEST(Cli, RegionCsvRoundTrip) {
  const std::string path = temp_path("region.csv");
  const json summary =
      call_json({"region", "--link", "identity", "--out", path, "--grid-size", "3"});
  EXPECT_EQ(summary.at("rows"), 3);
  const auto rows = parse_csv(slurp(path), "x,lower,upper");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], 0.25);
  EXPECT_NEAR(rows[0][1], 2.0 / 3.0, 1e-16);
  EXPECT_NEAR(rows[0][2], 2.0, 1e-16);
}

TEST(Cli, RegionJsonRoundTrip) {
  const json j = call_json({"region", "--link", "logit", "--format", "json",
                            "--grid-size", "5"});
  EXPECT_EQ(j.at("columns"), json({"x", "lower", "upper"}));
  EXPECT_EQ(j.at("rows").size(), 5u);
  EXPECT_EQ(j.at("rows")[2][1].get<double>(), 1.0);
}

TEST(Cli, CheckCalibration) {
  const json a = call_json({"check-calibration", "--loss",
                            R"({"weight":{"name":"cost","params":{"c0":0.3}}})",
                            "--c", "0.3"});
  EXPECT_EQ(a.at("calibration"), "calibrated");
  const Result b = call({"check-calibration", "--strict", "--loss",
                         R"j({"weight":{"name":"cost(0.3)"},"link":{"name":"identity"}})j",
                         "--c", "0.5"});
  EXPECT_EQ(b.code, kNegative);
  EXPECT_EQ(json::parse(b.out).at("calibration"), "not-calibrated");
}

TEST(Cli, ReconstructSymmetric) {
  const json j = call_json({"reconstruct-symmetric", "--half",
                            R"({"expr": "p"})", "--side", "lower",
                            "--grid-size", "9"});
  EXPECT_TRUE(j.at("fair").get<bool>());
  for (const auto& row : j.at("rows")) {
    const double p = row[0].get<double>();
    if (p > 0.5) {
      EXPECT_NEAR(row[1].get<double>(), 1.0 - std::log(2.0) - p - std::log1p(-p), 1e-6);
    }
  }
  const Result csv = call({"reconstruct-symmetric", "--half", R"({"expr": "p"})",
                           "--format", "csv", "--grid-size", "4"});
  EXPECT_EQ(parse_csv(csv.out, "p,ell_neg,ell_pos").size(), 4u);
}

TEST(Cli, MarginLink) {
  const Result r = call({"margin-link", "--phi", "exponential", "--grid-size", "11",
                         "--vmin", "-2", "--vmax", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out, "v,q");
  ASSERT_EQ(rows.size(), 11u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row[1], 1.0 / (1.0 + std::exp(-2.0 * row[0])), 1e-12);
  }
  EXPECT_EQ(call({"margin-link", "--phi", "hinge"}).code, kNumeric);
}

TEST(Cli, RobustnessCost) {
  const json j = call_json({"robustness", "--c0", "0.25", "--alpha", "0.1"});
  EXPECT_NEAR(j.at("interval")[0].get<double>(), 0.1875, 1e-15);
  EXPECT_EQ(j.at("interval")[1].get<double>(), 0.25);
  EXPECT_EQ(j.at("closed"), json({true, false}));
  const json h = call_json({"robustness", "--c0", "0.5", "--alpha", "0.1"});
  EXPECT_TRUE(h.at("interval").is_null());
}

TEST(Cli, RobustnessWeight) {
  const json j = call_json({"robustness", "--weight", R"({"name":"square"})",
                            "--alpha", "0.1", "--grid-size", "99"});
  const auto& u = j.at("nonrobust_union");
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u[0][0].get<double>(), 0.0);
  EXPECT_EQ(u[0][1].get<double>(), 0.5);
  EXPECT_EQ(u[1][1].get<double>(), 1.0);
}

TEST(Cli, SurrogateExperiment) {
  const json j = call_json({"surrogate-experiment"});
  const double expected[] = {0.66666667, 0.81779259, 1.0, 0.77763472};
  ASSERT_EQ(j.at("cells").size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(j.at("cells")[i].at("alpha_star").get<double>(), expected[i], 1e-4);
    EXPECT_EQ(j.at("cells")[i].at("reference_alpha").get<double>(), expected[i]);
  }
}

TEST(Cli, RegretBound) {
  const json j = call_json({"regret-bound", "--x", "0"});
  EXPECT_EQ(j.at("bound").get<double>(), 0.0);
  const std::string path = temp_path("bound.csv");
  call_json({"regret-bound", "--curve", "--out", path, "--grid-size", "101"});
  const auto rows = parse_csv(slurp(path), "x,bound");
  ASSERT_EQ(rows.size(), 101u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i][1], rows[i - 1][1]);
  // Seventeen significant digits survive the round trip.
  EXPECT_EQ(rows[25][1], 0.5 * std::exp(std::log(1.0) + 1.0) - 0.5);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"check-convexity", "--oracle", "--loss",
                                         R"({"weight":{"name":"minimal"},"link":{"name":"logit"}})"};
  EXPECT_EQ(call(args).out, call(args).out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"bogus"}).code, kUsage);
  EXPECT_EQ(call({"eval", "--y", "+1"}).code, kUsage);
  EXPECT_EQ(call({"eval", "--loss", R"({"weight":{"name":"log"}})", "--y", "2",
                  "--etahat", "0.5"})
                .code,
            kUsage);
  EXPECT_EQ(call({"eval", "--loss", R"({"weight":{"name":"log"}})", "--y", "1",
                  "--etahat", "1.5"})
                .code,
            kUsage);
  EXPECT_EQ(call({"regret-bound"}).code, kUsage);
  EXPECT_EQ(call({"catalog", "--grid-size", "2"}).code, kUsage);
  EXPECT_EQ(call({"robustness", "--c0", "0.3", "--alpha", "0.5"}).code, kUsage);
}

TEST(Cli, Help) {
  const Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("surrogate-experiment"), std::string::npos);
}

}  // namespace
}  // namespace cploss::cli
