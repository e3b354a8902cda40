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

#include "cdcalc/semigroup/heisenberg_kernel.h"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdcalc::semigroup {

namespace {

struct Weights {
  double ratio;  // s / sinh s
  double scoth;  // s coth s
};

Weights weights(double s) {
  if (s < 1e-6) return {1.0 - s * s / 6.0, 1.0 + s * s / 3.0};
  return {s / std::sinh(s), s / std::tanh(s)};
}

// Integral over s in [0, 60] in panels; the integrand is below 1e-24 past
// s = 60 and the panels resolve the oscillation at frequency w.
template <class F>
double panel_integral(F&& f, double w) {
  const double upper = 60.0;
  const int panels = 16 + static_cast<int>(std::ceil(w * upper / std::numbers::pi));
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = upper * k / panels, hi = upper * (k + 1) / panels;
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 5, 1e-13);
  }
  return sum;
}

}  // namespace

// With s = tau t the integrand is cos(s z/t) (s/sinh s) exp(-(s coth s) r^2/(4t)) / t^2.
double heisenberg_heat_kernel(double t, double r, double z) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
  const double w = std::abs(z) / t;
  const double a = r * r / (4.0 * t);
  auto integrand = [w, a](double s) {
    const auto k = weights(s);
    return std::cos(w * s) * k.ratio * std::exp(-a * k.scoth);
  };
  return panel_integral(integrand, w) / (4.0 * std::numbers::pi * std::numbers::pi * t * t);
}

KernelJet heisenberg_heat_kernel_jet(double t, double r, double z) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double w = std::abs(z) / t;
  const double a = r * r / (4.0 * t);
  // One fixed 20-point rule per oscillation period; s/sinh s < 1e-15 past 40.
  const double upper = 40.0;
  const int panels = std::max(16, static_cast<int>(std::ceil(w * upper / (2.0 * std::numbers::pi))));
  const auto& x = Rule::abscissa();
  const auto& wt = Rule::weights();
  double v = 0.0, vr = 0.0, vz = 0.0;
  auto add = [&](double s, double weight) {
    const auto k = weights(s);
    const double e = k.ratio * std::exp(-a * k.scoth) * weight;
    const double c = std::cos(w * s);
    v += c * e;
    vr += c * k.scoth * e;
    vz += s * std::sin(w * s) * e;
  };
  for (int p = 0; p < panels; ++p) {
    const double lo = upper * p / panels, hi = upper * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        add(mid, wt[i] * half);
      } else {
        add(mid + half * x[i], wt[i] * half);
        add(mid - half * x[i], wt[i] * half);
      }
    }
  }
  const double scale = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi * t * t);
  return {v * scale, -r / (2.0 * t) * scale * vr, -(z < 0 ? -1.0 : 1.0) / t * scale * vz};
}

}  // namespace cdcalc::semigroup
