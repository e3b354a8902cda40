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

#include <stdexcept>
#include <string>
#include <vector>

#include "cdcalc/inequality/constants.h"
#include "cdcalc/inequality/report.h"
#include "cdcalc/inequality/test_functions.h"
#include "cdcalc/semigroup/heat.h"

namespace cdcalc::inequality {

using semigroup::HeatOperator;

// A rho1 > 0 check was requested with rho1 <= 0.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The checkers below compare lattice quantities against the constants in constants.h.
// Norms use the normalized mass; Gamma is the discrete carre du champ of g.

// Gamma(ln P_t f) <= a LP_t f / P_t f + b at every node and time. f must be
// positive; a nonpositive P_t f is recorded as an infinite violation.
InequalityReport check_li_yau(const DiscreteGenerator& g, const HeatOperator& h,
                              const CDParams& p, Regime regime,
                              const std::vector<TestFunction>& fs,
                              const std::vector<double>& times, double tol = kDefaultTolerance);

// ||sqrt Gamma(P_t f)||_p <= C(t) ||f||_p.
InequalityReport check_gradient_bounds(const DiscreteGenerator& g, const HeatOperator& h,
                                       const CDParams& p, Regime regime,
                                       const std::vector<TestFunction>& fs,
                                       const std::vector<double>& times, double pnorm,
                                       double tol = kDefaultTolerance);

// Gamma(P_t f) <= gamma(t) (P_t f^2 - (P_t f)^2) pointwise (rho1 > 0).
InequalityReport check_reverse_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                        const CDParams& p, const std::vector<TestFunction>& fs,
                                        const std::vector<double>& times,
                                        double tol = kDefaultTolerance);

// ||f - P_t f||_p <= C(t) ||sqrt Gamma f||_p.
InequalityReport check_pseudo_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                       const CDParams& p, Regime regime,
                                       const std::vector<TestFunction>& fs,
                                       const std::vector<double>& times, double pnorm,
                                       bool dual_exponent = false,
                                       double tol = kDefaultTolerance);

// Eigenvector reductions, brute force over every stored eigenvalue:
//   pseudo-Poincare p = 2 (rho1 = 0, p < 2 branch): 1 - e^{lt} <= sqrt((2+4k/r2) t) sqrt(-l)
//   gradient p = 2 (rho1 = 0): -l e^{2lt} <= (1+2k/r2)/2t
// Both are scalar inequalities and are checked with zero tolerance.
InequalityReport check_pseudo_poincare_spectral(const HeatOperator& h, const CDParams& p,
                                                const std::vector<double>& times);
InequalityReport check_gradient_spectral(const HeatOperator& h, const CDParams& p,
                                         const std::vector<double>& times);

// ||f - f_M||_p <= C_p ||sqrt Gamma f||_p (rho1 > 0); at p = 2 also
// lambda_1 >= 1/C_2^2 against the lattice spectrum.
InequalityReport check_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                const CDParams& p, const std::vector<TestFunction>& fs,
                                double pnorm, double tol = kDefaultTolerance);

// lambda_1 of the lattice against r1 r2 / (((d-1)/d) r2 + k). The margin
// lambda_1 - bound goes to extra["margin"].
InequalityReport check_lichnerowicz(const HeatOperator& h, const CDParams& p,
                                    double tol = kDefaultTolerance);

struct CandidateMeasure {
  std::string id;
  double measure = 0.0;  // normalized mu(E)
  double perimeter = 0.0;
};

// P(E)/mu(E) >= 1/2 sqrt(rho1/2)/(1+2k/r2) for mu(E) <= 1/2, and
// mu(E)(1 - mu(E)) <= sqrt(2/rho1)(1+2k/r2) P(E) for every candidate.
InequalityReport check_cheeger(const CDParams& p, const std::vector<CandidateMeasure>& sets,
                               double tol = kDefaultTolerance);

// max_x p(x, x, t) <= (1 - e^{-2 r1 r2 t/3(r2+k)})^{-(d/2)(1+3k/2r2)}. The
// log-log slope of max_x p(x, x, t) over the smallest three grid times goes to
// extra["diag_slope"] next to extra["bound_exponent"].
InequalityReport check_ultracontractivity(const HeatOperator& h, const CDParams& p,
                                          const std::vector<double>& times,
                                          double tol = 0.05);

// Throws RegimeError unless p.rho1 > 0.
void require_positive(const CDParams& p, const std::string& check);

}  // namespace cdcalc::inequality
