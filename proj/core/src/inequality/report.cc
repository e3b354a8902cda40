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

#include "cdcalc/inequality/report.h"

#include <cmath>

namespace cdcalc::inequality {

double violation(double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs)) return std::numeric_limits<double>::infinity();
  if (std::isinf(rhs) && rhs > 0) return -1.0;
  return (lhs - rhs) / (1.0 + std::abs(rhs));
}

void InequalityReport::record(double lhs, double rhs, const std::string& function_id, double t,
                              long long point) {
  ++witnesses;
  const double v = violation(lhs, rhs);
  if (v > max_violation) {
    max_violation = v;
    worst = {function_id, t, point, lhs, rhs};
  }
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json InequalityReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["params"] = {{"rho1", params.rho1}, {"rho2", params.rho2}, {"kappa", params.kappa}, {"d", params.d}};
  j["rho1_certified"] = rho1_certified;
  j["witnesses"] = witnesses;
  j["max_violation"] = number(max_violation);
  j["worst_case"] = {{"function", worst.function_id},
                     {"t", worst.t},
                     {"point", worst.point},
                     {"lhs", number(worst.lhs)},
                     {"rhs", number(worst.rhs)}};
  j["tolerance"] = tolerance;
  j["seed"] = seed;
  j["vacuous"] = vacuous;
  j["passed"] = passed();
  j["notes"] = notes;
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

}  // namespace cdcalc::inequality
