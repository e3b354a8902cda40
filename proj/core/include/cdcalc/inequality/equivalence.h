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
#include <vector>

#include "cdcalc/inequality/report.h"

namespace cdcalc::inequality {

// Heisenberg data for the four equivalent growth statements: ball volumes,
// the kernel diagonal, a Nash-type inequality on a dilation-closed family,
// and isoperimetry on candidate sets. Each is checked for the scaling it
// predicts; the implications between them are not re-derived.
struct EquivalenceOptions {
  double pnorm = 2.0;
  double qnorm = 2.5;
  double rnorm = 1.0;
  double homogeneous_dim = 4.0;
  std::vector<double> radii{0.25, 0.354, 0.5, 0.707, 1.0, 1.414, 2.0};
  std::size_t samples = 100'000;
  std::uint64_t seed = 42;
  std::vector<double> times{0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
  std::vector<double> lambdas{0.25, 0.5, 2.0, 4.0};
  std::vector<int> powers{3, 4, 6};  // f = (1 - N^4)_+^k
  double volume_tol = 0.10;
  double slope_tol = 0.2;
  double kernel_tol = 0.05;
  double nash_tol = 0.02;
  double iso_tol = 0.02;
  bool volumes = true;  // the Monte Carlo part dominates the runtime
};

// Throws std::invalid_argument unless 1/q = 1/p - r/(qD).
void require_nash_exponents(double p, double q, double r, double dim);

// ||f||_q / (||sqrt(Gamma f)||_p^{p/q} ||f||_r^{1-p/q}) for f = (1 - |delta_lambda x|^4)_+^k.
double nash_ratio(int power, double lambda, double p, double q, double r);

InequalityReport check_equivalence_chain(const EquivalenceOptions& opts = {});

}  // namespace cdcalc::inequality
