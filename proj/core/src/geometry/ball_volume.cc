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

#include "cdcalc/geometry/ball_volume.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdcalc::geometry {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter, std::uint64_t lane) {
  const std::uint64_t h = mix(mix(mix(seed) ^ counter) ^ lane);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

VolumeEstimate ball_volume(const Point& x, double r, const VolumeOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  if (opts.samples == 0) throw std::invalid_argument("sample budget exhausted: zero samples");
  const double zmax = r * r / (4.0 * std::numbers::pi);
  const double box = (2.0 * r) * (2.0 * r) * (2.0 * zmax);
  VolumeEstimate est;
  est.r = r;
  est.samples = opts.samples;
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const Point local{r * (2.0 * counter_uniform(opts.seed, i, 0) - 1.0),
                      r * (2.0 * counter_uniform(opts.seed, i, 1) - 1.0),
                      zmax * (2.0 * counter_uniform(opts.seed, i, 2) - 1.0)};
    if (koranyi_gauge(local) > r) continue;
    const Point y = multiply(x, local);
    ++est.optimized;
    DistanceOptions d = opts.distance;
    d.seed = opts.seed ^ i;
    double dist = 0.0;
    try {
      dist = cc_distance(x, y, d).value;
    } catch (const EndpointNotReached&) {
      // Escalate once: more starts, finer controls. A second failure propagates.
      ++est.retried;
      d.starts = std::max(d.starts, 8);
      d.segments = std::max(d.segments, 16);
      dist = cc_distance(x, y, d).value;
    }
    if (dist <= r) ++est.hits;
  }
  const double p = static_cast<double>(est.hits) / static_cast<double>(est.samples);
  est.value = box * p;
  est.stderr_ = box * std::sqrt(p * (1.0 - p) / static_cast<double>(est.samples));
  return est;
}

SlopeFit volume_growth(const std::vector<double>& radii, const VolumeOptions& opts) {
  if (radii.size() < 2) throw std::invalid_argument("slope fit needs two radii");
  SlopeFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    VolumeOptions o = opts;
    o.seed = opts.seed + i;
    auto v = ball_volume({0.0, 0.0, 0.0}, radii[i], o);
    const double lx = std::log(radii[i]), ly = std::log(v.value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    fit.points.push_back(v);
  }
  const double n = static_cast<double>(radii.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace cdcalc::geometry
