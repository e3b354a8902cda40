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
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>

#include "cdcalc/inequality/test_functions.h"
#include "cdcalc/models/catalog.h"
#include "cdcalc/semigroup/generator.h"
#include "cdcalc/semigroup/heat.h"
#include "cdcalc/semigroup/heisenberg_kernel.h"
#include "cdcalc/semigroup/lattice_io.h"

namespace cdcalc::semigroup {
namespace {

constexpr double kPi = std::numbers::pi;

models::PeriodicLatticeSpec torus1(int points) {
  auto e = models::flat_torus(1);
  auto spec = e.default_lattice;
  spec.axes[0].points = points;
  return spec;
}

TEST(Generator, OneDimensionalFourierSpectrum) {
  auto g = build_generator(torus1(8));
  auto h = HeatOperator::dense(g);
  const double step = 2 * kPi / 8;
  std::vector<double> expect;
  for (int k = 0; k < 8; ++k) {
    const double s = std::sin(k * step / 2) * 2 / step;
    expect.push_back(s * s);
  }
  std::sort(expect.begin(), expect.end());
  auto got = h.spectrum(8);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(got[k], expect[k], 1e-12);
}

TEST(Generator, FineGridFirstEigenvalueNearOne) {
  auto g = build_generator(torus1(256));
  auto s = spectrum(g, 2);
  EXPECT_NEAR(s[0], 0.0, 1e-10);
  EXPECT_NEAR(s[1], 1.0, 1e-3);
}

TEST(Generator, HeisenbergInvariants) {
  auto e = models::heisenberg(1);
  auto spec = e.default_lattice;
  for (auto& a : spec.axes) a.points = 8;
  auto g = build_generator(e, spec);
  Vector ones = Vector::Ones(static_cast<Eigen::Index>(g.size()));
  EXPECT_LT((g.apply(ones)).cwiseAbs().maxCoeff(), 1e-10);
  SparseMatrix k = g.stiffness();
  SparseMatrix kt = k.transpose();
  EXPECT_LT((k - kt).norm(), 1e-10);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  Vector f(static_cast<Eigen::Index>(g.size()));
  for (auto& v : f) v = n(rng);
  const double form = -g.inner(f, g.apply(f));
  EXPECT_GE(form, 0.0);
  EXPECT_NEAR(form, g.mean(g.gamma(f)), 1e-10 * (1 + form));
}

TEST(Generator, SizeCapEnforced) {
  auto e = models::heisenberg(1);
  auto spec = e.default_lattice;
  for (auto& a : spec.axes) a.points = 100;
  EXPECT_THROW(build_generator(e, spec), models::SizeCapExceeded);
}

TEST(Generator, DisconnectedGraphHasDoubleZero) {
  std::vector<Eigen::Triplet<double>> t;
  auto edge = [&t](int a, int b) {
    t.emplace_back(a, a, 1.0);
    t.emplace_back(b, b, 1.0);
    t.emplace_back(a, b, -1.0);
    t.emplace_back(b, a, -1.0);
  };
  edge(0, 1);
  edge(1, 2);
  edge(3, 4);
  SparseMatrix k(5, 5);
  k.setFromTriplets(t.begin(), t.end());
  auto g = DiscreteGenerator::from_stiffness(k, Vector::Ones(5));
  auto s = HeatOperator::dense(g).spectrum(3);
  EXPECT_NEAR(s[0], 0.0, 1e-12);
  EXPECT_NEAR(s[1], 0.0, 1e-12);
  EXPECT_GT(s[2], 0.1);
}

TEST(Heat, SemigroupAndMass) {
  auto e = models::su2();
  auto spec = e.default_lattice;
  spec.axes = {{0, 2 * kPi, 8, true}, {0, kPi, 8, false}, {0, 4 * kPi, 12, true}};
  auto g = build_generator(e, spec);
  auto h = HeatOperator::dense(g);
  Vector ones = Vector::Ones(static_cast<Eigen::Index>(g.size()));
  EXPECT_LT((h.apply(ones, 0.7).values - ones).cwiseAbs().maxCoeff(), 1e-10);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  Vector f(static_cast<Eigen::Index>(g.size()));
  for (auto& v : f) v = u(rng);
  Vector a = h.apply(h.apply(f, 0.3).values, 0.4).values;
  Vector b = h.apply(f, 0.7).values;
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(g.mean(b), g.mean(f), 1e-10);
  EXPECT_LT((h.apply(f, 0.0).values - f).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(h.apply(f, -1.0), std::invalid_argument);
  // Chapman-Kolmogorov on the diagonal.
  Vector row = h.kernel_row(17, 0.25);
  EXPECT_NEAR(h.kernel_diag(0.5)[17], g.inner(row, row), 1e-8);
  EXPECT_NEAR(h.kernel_diag(200.0)[17], 1.0, 1e-8);
}

TEST(Heat, IterativeMatchesDense) {
  auto e = models::heisenberg(1);
  auto spec = e.default_lattice;
  for (auto& a : spec.axes) a.points = 8;
  auto g = build_generator(e, spec);
  auto dense = HeatOperator::dense(g).spectrum(12);
  auto it = HeatOperator::iterative(g, 12).spectrum(12);
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(it[k], dense[k], 1e-7);
}

TEST(Heat, CacheRoundTrip) {
  auto g = build_generator(torus1(16));
  HeatOptions o;
  o.cache_dir = (std::filesystem::temp_directory_path() / "cdcalc_cache_test").string();
  std::filesystem::remove_all(o.cache_dir);
  auto a = HeatOperator::build(g, o);
  auto b = HeatOperator::build(g, o);
  EXPECT_EQ(a.eigenvalues(), b.eigenvalues());
  EXPECT_FALSE(std::filesystem::is_empty(o.cache_dir));
  std::filesystem::remove_all(o.cache_dir);
}

TEST(Kernel, OriginClosedFormAndMass) {
  EXPECT_NEAR(heisenberg_heat_kernel(0.5, 0, 0), heisenberg_heat_kernel_origin(0.5), 1e-10);
  // Total mass 1: integrate over r (2 pi r dr) and z on a truncated box.
  const double t = 0.5;
  double total = 0;
  const int nr = 96, nz = 96;
  const double rmax = 6, zmax = 6;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * rmax / nr;
    for (int j = 0; j < nz; ++j) {
      const double z = -zmax + (j + 0.5) * 2 * zmax / nz;
      total += heisenberg_heat_kernel(t, r, z) * 2 * kPi * r * (rmax / nr) * (2 * zmax / nz);
    }
  }
  EXPECT_NEAR(total, 1.0, 2e-3);
}

TEST(Heat, PositivityAndContractionOnTorus) {
  auto e = models::flat_torus(2);
  auto spec = e.default_lattice;
  for (auto& a : spec.axes) a.points = 16;
  auto g = build_generator(e, spec);
  auto h = HeatOperator::dense(g);
  auto fs = inequality::random_family(g, 20, 3, inequality::FunctionKind::kPositive);
  auto signed_fs = inequality::random_family(g, 20, 3, inequality::FunctionKind::kSigned);
  for (double t : {0.01, 0.1, 1.0}) {
    for (const auto& f : fs) EXPECT_GE(h.apply(f.values, t).values.minCoeff(), -1e-8);
    for (const auto& f : signed_fs) {
      Vector pf = h.apply(f.values, t).values;
      for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()})
        EXPECT_LE(g.norm(pf, p), g.norm(f.values, p) * (1 + 1e-10));
    }
  }
}

TEST(Heat, L2ContractionOnEveryModel) {
  for (const char* name : {"heisenberg", "su2"}) {
    auto e = models::catalog_entry(name);
    auto spec = e.default_lattice;
    spec.axes[0].points = 8;
    spec.axes[1].points = 8;
    spec.axes[2].points = name == std::string("su2") ? 16 : 8;
    auto g = build_generator(e, spec);
    auto h = HeatOperator::dense(g);
    for (const auto& f : inequality::random_family(g, 10, 9, inequality::FunctionKind::kSigned))
      for (double t : {0.05, 0.5, 5.0})
        EXPECT_LE(g.norm(h.apply(f.values, t).values, 2.0), g.norm(f.values, 2.0) * (1 + 1e-10)) << name;
  }
}

// Closed forms on eigenvectors against the full lattice evaluation.
TEST(Heat, EigenvectorIdentities) {
  auto e = models::su2();
  auto spec = e.default_lattice;
  spec.axes = {{0, 2 * kPi, 8, true, 2, 2 * kPi}, {0, kPi, 8, false}, {0, 4 * kPi, 16, true}};
  auto g = build_generator(e, spec);
  auto h = HeatOperator::dense(g);
  for (int k : {1, 2, 5, 11}) {
    Vector v = h.eigenvectors().col(k);
    const double lam = h.eigenvalues()[k];  // L v = lam v, lam <= 0
    const double n2 = g.norm(v, 2.0);
    EXPECT_NEAR(g.inner(v, g.apply(v)), lam * n2 * n2, 1e-8);
    for (double t : {0.1, 0.7, 2.0}) {
      Vector pv = h.apply(v, t).values;
      EXPECT_NEAR(g.norm(pv - v, 2.0), (1 - std::exp(lam * t)) * n2, 1e-8);
      // Energy: integral of Gamma(P_t v) equals -lam e^{2 lam t} |v|^2.
      EXPECT_NEAR(g.mean(g.gamma(pv)), -lam * std::exp(2 * lam * t) * n2 * n2, 1e-8);
    }
  }
}

TEST(Generator, SU2FrameMatchesQuaternionFields) {
  auto e = models::su2();
  auto g = build_generator(e, e.default_lattice);
  for (int c = 0; c < 4; ++c) {
    auto f = g.sample([&](std::span<const double> x) { return inequality::quaternion_coordinates(x)[c]; });
    Vector gam = g.gamma(f);
    double err = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto x = g.node(i);
      if (x[1] < 1.0 || x[1] > kPi - 1.0) continue;
      auto q = inequality::quaternion_coordinates(x);
      const double qj[4] = {-q[2], -q[3], q[0], q[1]};
      const double qk[4] = {-q[3], q[2], -q[1], q[0]};
      err = std::max(err, std::abs(gam[i] - (qj[c] * qj[c] + qk[c] * qk[c]) / 4));
    }
    EXPECT_LT(err, 0.01) << "coordinate " << c;
  }
}

TEST(Heat, SU2SpectralGap) {
  auto e = models::su2();
  auto s = spectrum(build_generator(e, e.default_lattice), 4);
  EXPECT_NEAR(s[0], 0.0, 1e-10);
  EXPECT_NEAR(s[1], 0.54304, 1e-4);
  EXPECT_NEAR(s[2], s[1], 1e-8);
}

TEST(LatticeIo, RoundTrip) {
  auto g = build_generator(torus1(10));
  Vector v = Vector::LinSpaced(10, 0, 1);
  auto f = LatticeFunction::from(g, v);
  auto path = (std::filesystem::temp_directory_path() / "cdcalc_lf.bin").string();
  write_lattice_function(path, f);
  auto back = read_lattice_function(path);
  EXPECT_EQ(back.values, f.values);
  EXPECT_EQ(back.mass, f.mass);
  EXPECT_EQ(back.dims, f.dims);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace cdcalc::semigroup
