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

#include <functional>
#include <vector>

#include "cdcalc/inequality/checks.h"

namespace cdcalc::inequality {

// sup_t t^{-alpha/2} ||P_t f||_inf over a log grid, refined around the grid
// maximum. When the maximum sits at a grid end the value is only a lower
// bound and the matching growth flag is set.
struct BesovNorm {
  double alpha = -1.0;
  double value = 0.0;  // may be +inf
  double argmax = 0.0;
  std::vector<double> times;
  bool growing_at_start = false;
  bool growing_at_end = false;
  bool lower_bound() const { return growing_at_start || growing_at_end; }
};

// 61 log-spaced times on [1e-3, 1e3].
std::vector<double> default_besov_grid();

// Generic form: sup_norm(t) = ||P_t f||_inf.
BesovNorm besov_norm(const std::function<double(double)>& sup_norm, double alpha,
                     const std::vector<double>& times = default_besov_grid());

// Lattice form. A function with nonzero mean has infinite norm since
// P_t f -> mean.
BesovNorm besov_norm(const DiscreteGenerator& g, const HeatOperator& h, const Vector& f,
                     double alpha, const std::vector<double>& times = default_besov_grid());

// R(f) = ||f||_q / (||sqrt Gamma f||_p^theta ||f||_B^{1-theta}), theta = p/q,
// with the Besov exponent theta/(theta-1).
double sobolev_ratio(double norm_q, double grad_p, double besov, double pnorm, double qnorm);
double sobolev_besov_alpha(double pnorm, double qnorm);

// Lattice band: ratios over mean-zero test functions; passes when
// max/min <= band. Ratios go to extra["ratios"].
InequalityReport check_improved_sobolev(const DiscreteGenerator& g, const HeatOperator& h,
                                        const CDParams& p, const std::vector<TestFunction>& fs,
                                        double pnorm, double qnorm, double band = 10.0);

// Heisenberg H^3 dilation family f_lambda = p_s o delta_lambda, which equals
// lambda^{-4} p_{s/lambda^2}. Norms come from quadrature of the kernel oracle
// on the unscaled space; the check is |R(f_lambda)/R(f_1) - 1| <= tol.
InequalityReport check_improved_sobolev_dilation(const CDParams& p, double s,
                                                 const std::vector<double>& lambdas,
                                                 double pnorm = 2.0, double qnorm = 4.0,
                                                 double tol = 0.05);

// Lebesgue norms on H^3 of the kernel p_s: ||p_s||_q and ||sqrt Gamma p_s||_p.
double heisenberg_kernel_norm(double s, double qnorm);
double heisenberg_kernel_gradient_norm(double s, double pnorm);

}  // namespace cdcalc::inequality
