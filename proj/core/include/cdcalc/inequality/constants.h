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

#include "cdcalc/certify/cd_params.h"
#include "cdcalc/certify/jet_form.h"

namespace cdcalc::inequality {

using certify::CDParams;

enum class Regime { kZero, kPositive };  // rho1 = 0 or rho1 > 0

const char* to_string(Regime r);

// Gamma(ln P_t f) <= a(t) LP_t f / P_t f + b(t).
struct LiYauCoefficients {
  double a = 0.0;
  double b = 0.0;
};

// Li-Yau with rho1 = 0: a = 1 + 3k/2r2, b = d a^2 / 2t.
LiYauCoefficients li_yau_zero(const CDParams& p, double t);
// Li-Yau with rho1 > 0.
LiYauCoefficients li_yau_positive(const CDParams& p, double t);

// ||sqrt Gamma(P_t f)||_p <= C ||f||_p. pnorm may be infinity.
double gradient_bound(const CDParams& p, double t, double pnorm, Regime regime);

// Gamma(P_t f) <= gamma(t) (P_t f^2 - (P_t f)^2) for rho1 > 0.
double reverse_poincare_gamma(const CDParams& p, double t);

// ||f - P_t f||_p <= C(t) ||sqrt Gamma f||_p. With dual_exponent the rho1 = 0,
// p >= 2 branch uses p' = p/(p-1) inside the square root instead of p.
double pseudo_poincare_bound(const CDParams& p, double t, double pnorm, Regime regime,
                             bool dual_exponent = false);

// ||f - f_M||_p <= C_p ||sqrt Gamma f||_p, 1 <= p < infinity, rho1 > 0.
double poincare_constant(const CDParams& p, double pnorm);

// iota >= 1/2 sqrt(rho1/2) / (1 + 2k/r2).
double cheeger_bound(const CDParams& p);
// mu(E)(1 - mu(E)) <= K P(E) with K = sqrt(2/rho1)(1 + 2k/r2).
double cheeger_product_constant(const CDParams& p);

// p(x, y, t) <= (1 - exp(-2 r1 r2 t / 3(r2 + k)))^{-(d/2)(1 + 3k/2r2)}.
double ultracontractive_bound(const CDParams& p, double t);
// Exponent (d/2)(1 + 3k/2r2) of the small-time blow-up of that bound.
double ultracontractive_exponent(const CDParams& p);

// lambda_1 >= r1 r2 / (((d-1)/d) r2 + k).
double lichnerowicz_bound(const CDParams& p);
// Same bound in exact arithmetic.
symbolic::Rational lichnerowicz_bound(const certify::ExactCDParams& p);

}  // namespace cdcalc::inequality
