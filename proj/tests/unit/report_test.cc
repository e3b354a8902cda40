// Copyright 2026 The cdcalc Authors
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
#include <limits>
#include <sstream>

#include "cdcalc/report/run.h"

namespace cdcalc::report {
namespace {

using nlohmann::json;

json torus_config() {
  return {{"model", "torus1"},
          {"params", {{"source", "explicit"}, {"rho1", 0.0}, {"rho2", 1.0}, {"kappa", 0.0}, {"d", 1.0}}},
          {"lattice", {{"points", {32}}}},
          {"seed", 3},
          {"functions", 8},
          {"times", {{"min", 0.05}, {"max", 2.0}, {"count", 5}}}};
}

TEST(RunConfig, StrictParsing) {
  EXPECT_NO_THROW(RunConfig::from_json(torus_config()));
  auto j = torus_config();
  j["sed"] = 3;
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
  j = torus_config();
  j.erase("seed");
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
  j = torus_config();
  j["inequalities"] = {"li-yau", "harnack"};
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
  j = torus_config();
  j["times"]["min"] = 0.0;
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
  j = torus_config();
  j["tolerances"] = {{"li-yau", -1.0}};
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
  j = torus_config();
  j["functions"] = "many";
  EXPECT_THROW(RunConfig::from_json(j), ConfigError);
}

TEST(RunConfig, JsonRoundTrip) {
  auto c = RunConfig::from_json(torus_config());
  c.tolerances["gradient"] = 0.05;
  c.inequalities = {"gradient", "li-yau"};
  EXPECT_EQ(RunConfig::from_json(c.to_json()).to_json(), c.to_json());
}

TEST(Run, ExitCodes) {
  auto j = torus_config();
  j["model"] = "klein";
  EXPECT_EQ(run(RunConfig::from_json(j)), 2);
  j = torus_config();
  j["lattice"] = {{"points", {64}}, {"max_points", 16}};
  EXPECT_EQ(run(RunConfig::from_json(j)), 3);
  j = torus_config();
  j["inequalities"] = {"poincare"};  // needs rho1 > 0
  EXPECT_EQ(run(RunConfig::from_json(j)), 2);
  j = torus_config();
  j["inequalities"] = {"cheeger"};
  EXPECT_EQ(run(RunConfig::from_json(j)), 2);
  // The flat circle has no positive curvature to certify.
  j = torus_config();
  j["params"]["rho1"] = 0.5;
  j["inequalities"] = {"lichnerowicz"};
  std::string why;
  EXPECT_EQ(run(RunConfig::from_json(j), &why), 1);
  EXPECT_NE(why.find("certify"), std::string::npos) << why;
}

// With the (p - 1) factor the p = infinity pseudo-Poincare bound is 0; only the dual reading can pass.
TEST(Run, PrintedPseudoPoincareDegenerates) {
  auto j = torus_config();
  j["inequalities"] = {"pseudo-poincare"};
  std::string why;
  EXPECT_EQ(run(RunConfig::from_json(j), &why), 1);
  EXPECT_EQ(why, "failed: pseudo-poincare-zero[p=inf]");
  j["dual_exponent"] = true;
  EXPECT_EQ(run(RunConfig::from_json(j), &why), 0) << why;
}

TEST(Run, ReportsAgree) {
  auto c = RunConfig::from_json(torus_config());
  c.dual_exponent = true;
  const auto prefix = std::filesystem::temp_directory_path() / "cdcalc_run_test";
  c.output = prefix.string();
  std::string why;
  ASSERT_EQ(run(c, &why), 0) << why;
  std::ifstream js(c.output + ".json"), cs(c.output + ".csv");
  const json report = json::parse(js);
  EXPECT_TRUE(report.at("passed").get<bool>());
  EXPECT_EQ(report.at("config").at("seed"), 3);
  std::string line;
  std::getline(cs, line);
  EXPECT_EQ(line, "name,max_violation,tolerance,pass");
  std::size_t rows = 0;
  while (std::getline(cs, line)) {
    std::stringstream ss(line);
    std::string name, violation, tol, pass;
    std::getline(ss, name, ',');
    std::getline(ss, violation, ',');
    std::getline(ss, tol, ',');
    std::getline(ss, pass, ',');
    const auto& r = report.at("reports").at(rows);
    EXPECT_EQ(r.at("name"), name);
    const auto& v = r.at("max_violation");
    if (v.is_number()) EXPECT_EQ(format_number(v.get<double>()), violation) << name;
    else EXPECT_EQ(v.get<std::string>(), violation) << name;
    EXPECT_EQ(pass, "true");
    ++rows;
  }
  EXPECT_EQ(rows, report.at("reports").size());
  EXPECT_GE(rows, 4u);
  EXPECT_EQ(report.at("reports").at(0).at("name"), "certify");
  std::filesystem::remove(c.output + ".json");
  std::filesystem::remove(c.output + ".csv");
}

TEST(Run, Deterministic) {
  const auto c = RunConfig::from_json(torus_config());
  EXPECT_EQ(execute(c).to_json(c), execute(c).to_json(c));
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-2.5e-12), "-2.5e-12");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

}  // namespace
}  // namespace cdcalc::report
