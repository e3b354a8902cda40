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

#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdcalc/certify/cd_params.h"
#include "cdcalc/inequality/report.h"

namespace cdcalc::report {

// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamSource { kReference, kMaximize, kExplicit };

struct RunConfig {
  std::string model;
  ParamSource source = ParamSource::kReference;
  // kExplicit uses all four; kMaximize reads rho2, kappa, d and ignores rho1.
  std::optional<certify::CDParams> params;
  std::vector<int> lattice_points;  // empty keeps the catalog default
  std::size_t max_points = 0;       // 0 keeps the default cap
  std::uint64_t seed = 0;           // mandatory in the file form
  std::size_t functions = 50;
  double t_min = 0.05, t_max = 5.0;
  int t_count = 12;
  std::vector<std::string> inequalities;  // empty runs every check that applies
  std::map<std::string, double> tolerances;
  bool dual_exponent = false;
  std::size_t volume_samples = 20'000;  // equivalence chain ball volumes
  std::string output;                   // prefix: writes <output>.json and <output>.csv

  static RunConfig from_json(const nlohmann::json& j);  // throws ConfigError
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

std::vector<std::string> known_inequalities();

struct RunResult {
  certify::CDParams params;
  bool certified = false;
  double certificate_min_eig = 0.0;
  std::vector<inequality::InequalityReport> reports;  // the certify row is reports[0]
  bool passed() const;
  nlohmann::json to_json(const RunConfig& config) const;
  std::string csv() const;
};

RunResult execute(const RunConfig& config);

// Runs, writes the report files when an output prefix is set, and maps
// failures to exit codes: 0 pass, 1 check failure, 2 bad model or config,
// 3 lattice size cap.
int run(const RunConfig& config, std::string* diagnostic = nullptr);

// Shortest round-trip decimal text for a double; inf and nan are spelled out.
std::string format_number(double v);

}  // namespace cdcalc::report
