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

#include "cdcalc/inequality/constants.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdcalc::inequality {

namespace {

void need_positive_time(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("time must be > 0");
}

void need_positive_rho1(const CDParams& p) {
  if (!(p.rho1 > 0.0)) throw std::domain_error("constant requires rho1 > 0");
}

void need_norm(double pnorm) {
  if (!(pnorm >= 1.0)) throw std::invalid_argument("norm exponent must lie in [1, inf]");
}

// 1 + 3k/(2 r2), the factor that appears throughout.
double c3(const CDParams& p) { return 1.0 + 3.0 * p.kappa / (2.0 * p.rho2); }
// 2 r1 r2 / (3 (r2 + k)).
double rate3(const CDParams& p) { return 2.0 * p.rho1 * p.rho2 / (3.0 * (p.rho2 + p.kappa)); }
// r1 r2 / (r2 + k).
double rate1(const CDParams& p) { return p.rho1 * p.rho2 / (p.rho2 + p.kappa); }

double beta_positive(const CDParams& p, double t) {
  const double a = rate3(p);
  return p.d * p.rho1 * p.rho2 / (3.0 * (p.rho2 + p.kappa)) * c3(p) * c3(p) *
         std::exp(-2.0 * a * t) / -std::expm1(-a * t);
}

double alpha_positive(const CDParams& p, double t) { return c3(p) * std::exp(-rate3(p) * t); }

}  // namespace

const char* to_string(Regime r) { return r == Regime::kZero ? "zero" : "positive"; }

LiYauCoefficients li_yau_zero(const CDParams& p, double t) {
  p.validate();
  need_positive_time(t);
  const double a = c3(p);
  return {a, p.d * a * a / (2.0 * t)};
}

LiYauCoefficients li_yau_positive(const CDParams& p, double t) {
  p.validate();
  need_positive_rho1(p);
  need_positive_time(t);
  const double a = rate3(p);
  const double first = (2.0 * p.rho2 + 3.0 * p.kappa) / (2.0 * p.rho2) * std::exp(-a * t);
  const double second = p.d * p.rho1 / (12.0 * p.rho2) *
                        std::pow(2.0 * p.rho2 + 3.0 * p.kappa, 2) / (p.rho2 + p.kappa) *
                        std::exp(-2.0 * a * t) / -std::expm1(-a * t);
  return {first, second};
}

double gradient_bound(const CDParams& p, double t, double pnorm, Regime regime) {
  p.validate();
  need_positive_time(t);
  need_norm(pnorm);
  if (regime == Regime::kZero) {
    if (pnorm < 2.0) {
      return c3(p) / std::sqrt(1.0 + (pnorm - 1.0) * c3(p)) * std::sqrt(p.d / (2.0 * t));
    }
    return std::sqrt((1.0 + 2.0 * p.kappa / p.rho2) / (2.0 * t));
  }
  need_positive_rho1(p);
  if (pnorm < 2.0) {
    return std::sqrt(beta_positive(p, t) / (1.0 + (pnorm - 1.0) * alpha_positive(p, t)));
  }
  return std::sqrt(reverse_poincare_gamma(p, t));
}

double reverse_poincare_gamma(const CDParams& p, double t) {
  p.validate();
  need_positive_rho1(p);
  need_positive_time(t);
  const double r = rate1(p);
  return 0.5 * p.rho1 * (p.rho2 + 2.0 * p.kappa) / (p.rho2 + p.kappa) * std::exp(-2.0 * r * t) /
         -std::expm1(-r * t);
}

double pseudo_poincare_bound(const CDParams& p, double t, double pnorm, Regime regime,
                             bool dual_exponent) {
  p.validate();
  need_norm(pnorm);
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  if (regime == Regime::kZero) {
    if (pnorm < 2.0) return std::sqrt((2.0 + 4.0 * p.kappa / p.rho2) * t);
    double e = pnorm;
    if (dual_exponent) e = std::isinf(pnorm) ? 1.0 : pnorm / (pnorm - 1.0);
    const double denom = std::isinf(e) ? std::numeric_limits<double>::infinity()
                                       : std::sqrt(1.0 + (e - 1.0) * c3(p));
    return c3(p) * std::sqrt(2.0 * p.d) / denom * std::sqrt(t);
  }
  need_positive_rho1(p);
  if (pnorm < 2.0) {
    return std::sqrt(2.0 * (p.rho2 + 2.0 * p.kappa) * (p.rho2 + p.kappa) /
                     (p.rho1 * p.rho2 * p.rho2) * -std::expm1(-rate1(p) * t));
  }
  return c3(p) * std::sqrt(3.0 * p.d * (p.rho2 + p.kappa) / (p.rho1 * p.rho2) *
                           -std::expm1(-rate3(p) * t));
}

double poincare_constant(const CDParams& p, double pnorm) {
  p.validate();
  need_positive_rho1(p);
  need_norm(pnorm);
  if (std::isinf(pnorm)) throw std::invalid_argument("Poincare constant needs p < infinity");
  if (pnorm < 2.0) {
    return std::sqrt(2.0 * (p.rho2 + 2.0 * p.kappa) * (p.rho2 + p.kappa) / (p.rho1 * p.rho2 * p.rho2));
  }
  return c3(p) * std::sqrt(3.0 * p.d * (p.rho2 + p.kappa) / (p.rho1 * p.rho2));
}

double cheeger_bound(const CDParams& p) {
  p.validate();
  need_positive_rho1(p);
  return 0.5 * std::sqrt(p.rho1 / 2.0) / (1.0 + 2.0 * p.kappa / p.rho2);
}

double cheeger_product_constant(const CDParams& p) {
  p.validate();
  need_positive_rho1(p);
  return std::sqrt(2.0 / p.rho1) * (1.0 + 2.0 * p.kappa / p.rho2);
}

double ultracontractive_bound(const CDParams& p, double t) {
  p.validate();
  need_positive_rho1(p);
  need_positive_time(t);
  return std::pow(-std::expm1(-rate3(p) * t), -ultracontractive_exponent(p));
}

double ultracontractive_exponent(const CDParams& p) { return 0.5 * p.d * c3(p); }

double lichnerowicz_bound(const CDParams& p) {
  p.validate();
  need_positive_rho1(p);
  return p.rho1 * p.rho2 / ((p.d - 1.0) / p.d * p.rho2 + p.kappa);
}

symbolic::Rational lichnerowicz_bound(const certify::ExactCDParams& p) {
  if (p.rho1 <= 0 || p.rho2 <= 0 || p.kappa < 0 || p.d <= 0) {
    throw std::domain_error("exact Lichnerowicz bound needs rho1 > 0 and valid parameters");
  }
  symbolic::Rational out = p.rho1 * p.rho2 / ((p.d - 1) / p.d * p.rho2 + p.kappa);
  out.canonicalize();
  return out;
}

}  // namespace cdcalc::inequality
