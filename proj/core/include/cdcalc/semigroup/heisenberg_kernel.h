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

namespace cdcalc::semigroup {

// Heat kernel of L = X^2 + Y^2 on H^3 (frame X = d_x - y/2 d_z,
// Y = d_y + x/2 d_z) w.r.t. Lebesgue measure, at the point with
// r^2 = x^2 + y^2 and height z, from the identity:
//   p_t(r, z) = 1/(4 pi^2) int_0^inf cos(tau z) tau/sinh(tau t)
//               exp(-(tau/4) coth(tau t) r^2) dtau.
// p_t(0, 0) = 1/(16 t^2).
double heisenberg_heat_kernel(double t, double r, double z);

struct KernelJet {
  double value = 0.0;
  double dr = 0.0;  // d/dr
  double dz = 0.0;  // d/dz
};

// Kernel and its r, z derivatives, differentiating under the integral. Uses a
// fixed Gauss rule per oscillation period, independent of the adaptive
// quadrature behind heisenberg_heat_kernel.
// For the radial kernel Gamma(p_t) = dr^2 + (r^2/4) dz^2.
KernelJet heisenberg_heat_kernel_jet(double t, double r, double z);

// Closed form of the diagonal, 1/(16 t^2).
inline double heisenberg_heat_kernel_origin(double t) { return 1.0 / (16.0 * t * t); }

}  // namespace cdcalc::semigroup
