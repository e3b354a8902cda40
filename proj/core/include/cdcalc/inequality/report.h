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
#include <limits>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cdcalc/certify/cd_params.h"

namespace cdcalc::inequality {

inline constexpr double kDefaultTolerance = 0.02;

struct WorstCase {
  std::string function_id;
  double t = 0.0;
  long long point = -1;  // lattice index, -1 for global (norm) checks
  double lhs = 0.0;
  double rhs = 0.0;
};

// Violations are (LHS - RHS)/(1 + |RHS|); positive means violated.
struct InequalityReport {
  std::string name;
  certify::CDParams params;
  bool rho1_certified = false;
  std::size_t witnesses = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
  WorstCase worst;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  bool vacuous = false;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();

  // Records one (f, t, x) comparison of lhs <= rhs.
  void record(double lhs, double rhs, const std::string& function_id, double t, long long point);
  bool passed() const { return max_violation <= tolerance; }
  nlohmann::json to_json() const;
};

double violation(double lhs, double rhs);

}  // namespace cdcalc::inequality
