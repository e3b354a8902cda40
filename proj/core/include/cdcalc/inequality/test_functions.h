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
#include <span>
#include <string>
#include <vector>

#include "cdcalc/semigroup/generator.h"

namespace cdcalc::inequality {

using semigroup::DiscreteGenerator;
using semigroup::Vector;

enum class FunctionKind {
  kSigned,
  kPositive,  // exp(c g / max|g|) of a signed member g
  kMeanZero,  // signed member minus its mass mean
};

struct TestFunction {
  std::string id;
  Vector values;
};

// Seeded smooth test functions sampled on the lattice of g. On su2 lattices the
// members are polynomials of degree <= 3 in the quaternion coordinates (smooth
// on the group, unlike trig polynomials in Euler angles); elsewhere they are
// trig polynomials of degree <= 3 per axis with coefficients N(0,1)/(1+|k|^2),
// using cos(k pi (x-lo)/L) on non-periodic axes. Member i depends only on
// (seed, i).
std::vector<TestFunction> random_family(const DiscreteGenerator& g, std::size_t count,
                                        std::uint64_t seed, FunctionKind kind);

// Exponential contrast used by kPositive.
inline constexpr double kPositiveContrast = 2.0;

// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

// Quaternion coordinates of an su2 Euler-angle node (phi, theta, psi).
std::vector<double> quaternion_coordinates(std::span<const double> euler);

}  // namespace cdcalc::inequality
