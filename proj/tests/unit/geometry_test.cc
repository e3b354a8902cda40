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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cdcalc/geometry/ball_volume.h"
#include "cdcalc/geometry/candidate.h"
#include "cdcalc/geometry/heisenberg.h"
#include "cdcalc/geometry/lattice_sets.h"

namespace cdcalc::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Distance, KnownValues) {
  const Point o{0, 0, 0};
  EXPECT_NEAR(cc_distance(o, {1, 0, 0}).value, 1.0, 1e-6);
  EXPECT_NEAR(cc_distance(o, {0, -2, 0}).value, 2.0, 1e-6);
  // A circle of length L encloses z = L^2 / (4 pi); K = 32 polygons overshoot by ~0.2%.
  const double vertical = cc_distance(o, {0, 0, 1}).value;
  EXPECT_GE(vertical, 2 * std::sqrt(kPi) - 1e-6);
  EXPECT_NEAR(vertical, 2 * std::sqrt(kPi), 5e-3 * 2 * std::sqrt(kPi));
}

TEST(Distance, MetricAxiomsAndInvariance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  auto point = [&] { return Point{u(rng), u(rng), u(rng)}; };
  for (int i = 0; i < 100; ++i) {
    const Point x = point(), y = point(), z = point(), g = point();
    const auto xz = cc_distance(x, z);
    EXPECT_LE(xz.value, cc_distance(x, y).value + cc_distance(y, z).value + 1e-6);
    EXPECT_LE(xz.lower_bound, xz.value + 1e-9);
    EXPECT_LT(xz.endpoint_error, 1e-6);
    EXPECT_NEAR(cc_distance(z, x).value, xz.value, 1e-3 * xz.value);
    EXPECT_NEAR(cc_distance(multiply(g, x), multiply(g, z)).value, xz.value, 1e-9);
  }
  EXPECT_EQ(cc_distance({0.3, 0.1, -0.2}, {0.3, 0.1, -0.2}).value, 0.0);
}

TEST(Distance, Dilation) {
  const Point x{0.2, -0.4, 0.3}, y{-0.5, 0.1, 0.6};
  const double base = cc_distance(x, y).value;
  for (double lam : {0.5, 2.0, 3.0})
    EXPECT_NEAR(cc_distance(dilate(x, lam), dilate(y, lam)).value, lam * base, 2e-3 * lam * base);
}

TEST(Distance, ControlsReproduceEndpoint) {
  const Point y{0.4, 0.2, 0.5};
  const auto d = cc_distance({0, 0, 0}, y);
  const Point end = integrate_controls(d.controls);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(end[c], y[c], 1e-6);
}

TEST(Group, LawAndInverse) {
  const Point a{1, 2, 3}, b{-1, 0.5, 2};
  const Point ab = multiply(a, b);
  EXPECT_DOUBLE_EQ(ab[2], 3 + 2 + (1 * 0.5 - 2 * -1) / 2);
  const Point e = multiply(a, inverse(a));
  for (double v : e) EXPECT_NEAR(v, 0.0, 1e-15);
  EXPECT_NEAR(koranyi_gauge(dilate(a, 2.0)), 2 * koranyi_gauge(a), 1e-12);
}

TEST(Perimeter, ClosedForms) {
  const double a = 0.7, h = 0.4;
  EXPECT_NEAR(horizontal_perimeter(tube(a, h)).value, 4 * kPi * a * h + 2 * kPi * a * a * a / 3, 1e-6);
  EXPECT_NEAR(enclosed_volume(tube(a, h)).value, 2 * kPi * a * a * h, 1e-6);
  const double c = 0.3, s = 0.6;
  const double top = 4.0 / 3.0 * (std::sqrt(2.0) + std::asinh(1.0)) * s * s * s;
  EXPECT_NEAR(horizontal_perimeter(box(s, c)).value, 16 * s * c + top, 1e-4);
  EXPECT_NEAR(enclosed_volume(box(s, c)).value, 8 * s * s * c, 1e-6);
}

TEST(Perimeter, DilationAndMonteCarlo) {
  for (const auto& e : {gauge_ball(1.0), box(0.6, 0.3), tube(0.7, 0.4)}) {
    const double p = horizontal_perimeter(e).value, v = enclosed_volume(e).value;
    const auto big = dilate(e, 1.5);
    EXPECT_NEAR(horizontal_perimeter(big).value, std::pow(1.5, 3) * p, 1e-5 * p) << e.id();
    EXPECT_NEAR(enclosed_volume(big).value, std::pow(1.5, 4) * v, 1e-5 * v) << e.id();
    EXPECT_NEAR(monte_carlo_volume(e, 400'000, 3), v, 0.01 * v) << e.id();
  }
}

TEST(Perimeter, MollifiedAgreesOnGaugeBall) {
  const auto e = gauge_ball(1.0);
  const double p = horizontal_perimeter(e).value;
  EXPECT_NEAR(mollified_perimeter(e, 0.01), p, 0.02 * p);
}

TEST(Isoperimetric, ReportFormsAndSeeds) {
  const auto r = check_isoperimetric({gauge_ball(1.0), tube(0.7, 0.4)}, {0.5, 2.0}, 4.0, 0.02, 200'000, 5);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.witnesses, 4u);
  EXPECT_LT(r.extra.at("max_mc_volume_gap").get<double>(), 0.02);
}

TEST(Caps, SU2PerimeterClosedForm) {
  for (double r : {0.3, 0.8, kPi / 2, 2.5}) {
    const double expect = std::pow(std::sin(r), 2) / 4;
    EXPECT_NEAR(su2_cap_perimeter({1, 0, 0, 0}, r), expect, 1e-8) << r;
    // Off-axis centres need more quadrature points for the same accuracy.
    EXPECT_NEAR(su2_cap_perimeter({0, 0.6, 0, 0.8}, r), expect, 1e-6) << r;
    EXPECT_NEAR(su2_cap_perimeter({0, 0.6, 0, 0.8}, r, 256), expect, 1e-8) << r;
  }
}

TEST(BallVolume, GaugeSandwichAndScaling) {
  VolumeOptions o;
  o.samples = 4000;
  o.seed = 9;
  const auto v = ball_volume({0, 0, 0}, 1.0, o);
  EXPECT_GT(v.value, 0.0);
  EXPECT_LT(v.stderr_, 0.1 * v.value);
  // d >= gauge, so the CC ball sits inside the gauge ball.
  EXPECT_LT(v.value, enclosed_volume(gauge_ball(1.0)).value + 3 * v.stderr_);
  // Left-invariant measure and r^4 growth.
  o.seed = 10;
  const auto w = ball_volume({0.5, -0.2, 0.1}, 2.0, o);
  EXPECT_NEAR(w.value / v.value, 16.0, 16.0 * 4 * (v.stderr_ / v.value + w.stderr_ / w.value));
}

TEST(CounterRng, Deterministic) {
  EXPECT_EQ(counter_uniform(1, 2, 3), counter_uniform(1, 2, 3));
  EXPECT_NE(counter_uniform(1, 2, 3), counter_uniform(1, 2, 4));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double x = counter_uniform(7, i, 0);
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

}  // namespace
}  // namespace cdcalc::geometry
