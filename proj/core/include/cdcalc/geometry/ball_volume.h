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
#include <vector>

#include "cdcalc/geometry/heisenberg.h"

namespace cdcalc::geometry {

// Uniform double in [0, 1) from (seed, counter, lane) by a splitmix64-style
// hash, so every sample is reproducible independently of evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t lane);

struct VolumeOptions {
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  DistanceOptions distance{8, 2, 1e-6, 0};
};

struct VolumeEstimate {
  double r = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  std::size_t optimized = 0;  // samples that needed the optimizer
  std::size_t retried = 0;    // of those, samples that needed a second attempt
};

// Lebesgue volume of {y : cc_distance(x, y) <= r} by Monte Carlo in the box
// |x|, |y| <= r, |z| <= r^2/(4 pi) that contains the ball. The gauge lower
// bound rejects samples without optimization; the rest use the optimizer's
// upper bound, so the estimate is a lower bound for mu(B(x, r)) up to noise.
VolumeEstimate ball_volume(const Point& x, double r, const VolumeOptions& opts = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<VolumeEstimate> points;
};

// Least-squares slope of log mu(B(0, r)) against log r; radius i uses the
// seed stream seed + i.
SlopeFit volume_growth(const std::vector<double>& radii, const VolumeOptions& opts = {});

}  // namespace cdcalc::geometry
