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

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdcalc::certify {

// Parameters of the generalized curvature-dimension inequality
//   Gamma_2(f) + nu Gamma_2^Z(f) >= (1/d)(Lf)^2 + (rho1 - kappa/nu) Gamma(f) + rho2 Gamma^Z(f).
struct CDParams {
  double rho1 = 0.0;
  double rho2 = 1.0;
  double kappa = 0.0;
  double d = 1.0;

  // Throws std::invalid_argument unless rho2 > 0, kappa >= 0 and 0 < d < inf.
  void validate() const {
    if (!std::isfinite(rho1)) throw std::invalid_argument("rho1 must be finite");
    if (!(rho2 > 0.0) || !std::isfinite(rho2)) throw std::invalid_argument("rho2 must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must lie in (0, inf)");
  }

  CDParams with_rho1(double r) const {
    CDParams p = *this;
    p.rho1 = r;
    return p;
  }

  friend bool operator==(const CDParams&, const CDParams&) = default;
};

inline std::string to_string(const CDParams& p) {
  return "CD(" + std::to_string(p.rho1) + ", " + std::to_string(p.rho2) + ", " +
         std::to_string(p.kappa) + ", " + std::to_string(p.d) + ")";
}

}  // namespace cdcalc::certify
