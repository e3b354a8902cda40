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

#include <array>
#include <string>
#include <vector>

#include "cdcalc/inequality/checks.h"
#include "cdcalc/semigroup/heat.h"

namespace cdcalc::geometry {

using semigroup::DiscreteGenerator;
using semigroup::HeatOperator;
using semigroup::Vector;

struct LatticeSet {
  std::string id;
  Vector indicator;        // 0/1 per node
  double perimeter = 0.0;  // normalized horizontal perimeter of the smooth set
};

// Horizontal perimeter of the cap {q : <q, v> >= cos r} of SU(2) = S^3 for the
// frame X = q i/2, Y = q j/2, normalized by the Haar volume 16 pi^2, by
// surface quadrature over the boundary sphere q = cos r v + sin r w. For
// smooth f, |N_H| = sqrt(Gamma f)/|grad f| with |grad f|^2 = Gamma f + (Zf)^2.
double su2_cap_perimeter(const std::array<double, 4>& v, double r, int resolution = 64);

// Lattice indicator of that cap, with the perimeter above; r = pi/2 gives a
// hemisphere. v need not be normalized.
LatticeSet su2_cap(const DiscreteGenerator& g, const std::array<double, 4>& v, double r);

// Default su2 family: hemispheres and caps of radius pi/8 .. 3pi/8 around a
// fixed set of seeded centres.
std::vector<LatticeSet> su2_cap_family(const DiscreteGenerator& g, int centres, std::uint64_t seed);

// Lattice perimeter as the mollified total variation
//   P(E) ~ sum_x m_x sqrt(Gamma_h(P_eps 1_E))(x)
// with respect to the normalized mass. eps is a heat time.
double lattice_perimeter(const DiscreteGenerator& g, const HeatOperator& h, const Vector& indicator,
                         double eps);

// Default smoothing time c / lambda_max(-L): the top of the spectrum scales
// like 1/h^2, so this is a fixed number of mesh widths squared.
double default_perimeter_time(const HeatOperator& h);
inline constexpr double kPerimeterTimeFactor = 40.0;

// Lattice measures (normalized) and surface perimeters, ready for check_cheeger.
std::vector<inequality::CandidateMeasure> measure_sets(const DiscreteGenerator& g,
                                                       const std::vector<LatticeSet>& sets);

}  // namespace cdcalc::geometry
