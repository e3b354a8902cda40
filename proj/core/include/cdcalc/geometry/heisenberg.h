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
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cdcalc::geometry {

// Points of H^3 in exponential coordinates (x, y, z) for the frame
// X = d_x - (y/2) d_z, Y = d_y + (x/2) d_z.
using Point = std::array<double, 3>;

// Group law (x, y, z)(x', y', z') = (x + x', y + y', z + z' + (x y' - y x')/2).
Point multiply(const Point& a, const Point& b);
Point inverse(const Point& a);
Point dilate(const Point& a, double lambda);

// Gauge (r^4 + 16 z^2)^{1/4}. It satisfies Gamma(N) = r^2/N^2 <= 1, so
// N(x^{-1} y) is a lower bound for d(x, y) by the dual formula.
double koranyi_gauge(const Point& p);

// Best lower bound from the Lipschitz test family: linear horizontal
// functions and the left-translated gauge.
double cc_lower_bound(const Point& x, const Point& y);

struct DistanceOptions {
  int segments = 32;     // K >= 4 piecewise-constant control segments
  int starts = 8;        // random restarts besides the straight-line start
  double endpoint_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct DistanceResult {
  double value = 0.0;        // length of the best subunit path found (upper bound)
  double lower_bound = 0.0;  // cc_lower_bound
  double endpoint_error = 0.0;
  int converged_starts = 0;
  std::vector<double> controls;  // (a_k, b_k) of the best path, duration 1/K each
};

// Thrown when no start reaches the endpoint within tolerance.
class EndpointNotReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carnot-Caratheodory distance by direct control optimization: minimize the
// energy (1/K) sum |u_k|^2 of a constant-speed path under the endpoint
// constraint with a damped Newton iteration on the KKT system, from several
// starts. Reduces to the origin by left invariance.
DistanceResult cc_distance(const Point& x, const Point& y, const DistanceOptions& opts = {});

// Endpoint of the path with the given controls, started at the origin.
Point integrate_controls(const std::vector<double>& controls);

}  // namespace cdcalc::geometry
