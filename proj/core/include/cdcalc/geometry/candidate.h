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
#include <string>
#include <vector>

#include "cdcalc/geometry/heisenberg.h"
#include "cdcalc/inequality/report.h"

namespace cdcalc::geometry {

enum class SetKind { kGaugeBall, kBox, kTube, kCustom };

const char* to_string(SetKind k);

// One boundary patch Psi : [u0, u1] x [v0, v1] -> H^3, oriented so that
// d_u Psi x d_v Psi points outward. Periodic v uses the trapezoid rule.
struct BoundaryPatch {
  std::function<Point(double, double)> map;
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
  bool periodic_v = false;
};

// A candidate set E = {level <= 0}, star-shaped about the origin, with a
// smooth (piecewise smooth for boxes) boundary parametrization.
struct CandidateSet {
  SetKind kind = SetKind::kCustom;
  std::vector<double> params;
  std::function<double(const Point&)> level;
  std::vector<BoundaryPatch> patches;
  double extent = 1.0;  // the set lies in the Euclidean ball of this radius

  bool contains(const Point& p) const { return level(p) <= 0.0; }
  std::string id() const;
};

// {N <= R} for the gauge N = (r^4 + 16 z^2)^{1/4}.
CandidateSet gauge_ball(double radius);
// [-a, a]^2 x [-c, c].
CandidateSet box(double a, double c);
// Vertical cylinder {r <= a, |z| <= h}.
CandidateSet tube(double a, double h);
// Custom star-shaped set {rho <= R(omega)}: radial graph over the unit sphere
// in the (x, y, z) chart, R smooth and positive.
CandidateSet custom_radial(std::function<double(double, double)> radius, double extent,
                           std::vector<double> params = {});

// delta_lambda E. Kind and parameters follow the dilation when known.
CandidateSet dilate(const CandidateSet& e, double lambda);

struct PerimeterOptions {
  int resolution = 48;  // Gauss points per patch direction at the coarse level
  double rel_tol = 1e-3;
};

struct Quadrature {
  double value = 0.0;
  double coarse = 0.0;  // same rule at half resolution
  double rel_change = 0.0;
};

class NonConvergentQuadrature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// P(E) = int_{dE} |N_H| dsigma with N_H the horizontal part of the unit
// normal, i.e. sum over patches of |(<X, n>, <Y, n>)| for n = d_u Psi x d_v Psi.
// Compared across two resolutions; throws NonConvergentQuadrature when the
// relative change exceeds rel_tol.
Quadrature horizontal_perimeter(const CandidateSet& e, const PerimeterOptions& opts = {});

// Lebesgue volume by the divergence theorem, (1/3) int <Psi, n>.
Quadrature enclosed_volume(const CandidateSet& e, const PerimeterOptions& opts = {});

// Monte Carlo volume in the bounding cube with the counter-based RNG.
double monte_carlo_volume(const CandidateSet& e, std::size_t samples, std::uint64_t seed);

// Mollified total variation int sqrt(Gamma(S(level/eps))) dx, with S a smooth
// even-derivative step of width eps. By the coarea formula it tends to
// P(E) as eps -> 0 with O(eps^2) error. Radial lines through the origin carry
// the one-dimensional integrals.
double mollified_perimeter(const CandidateSet& e, double eps, int angular = 96);

// mu(E)^{(D-1)/D} / P(E) across dilations lambda of each base set; records
// |ratio(lambda)/ratio(1) - 1| against tol. extra["ratios"] lists all rows and
// extra["max_ratio"] the largest ratio seen (an empirical C_4).
inequality::InequalityReport check_isoperimetric(const std::vector<CandidateSet>& sets,
                                                 const std::vector<double>& lambdas,
                                                 double homogeneous_dim = 4.0,
                                                 double tol = 0.02,
                                                 std::size_t mc_samples = 1'000'000,
                                                 std::uint64_t seed = 0);

}  // namespace cdcalc::geometry
