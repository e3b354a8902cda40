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

#include "cdcalc/inequality/test_functions.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cdcalc::inequality {

namespace {

std::mt19937_64 member_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// All exponent vectors with entries in [0, deg] per axis.
std::vector<std::vector<int>> multi_indices(int dim, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(dim, lo);
  while (true) {
    out.push_back(k);
    int a = 0;
    while (a < dim && ++k[a] > hi) k[a++] = lo;
    if (a == dim) break;
  }
  return out;
}

Vector quaternion_member(const DiscreteGenerator& g, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto exps = multi_indices(4, 0, 3);
  std::vector<std::pair<std::vector<int>, double>> terms;
  for (auto& e : exps) {
    const int deg = e[0] + e[1] + e[2] + e[3];
    if (deg > 3) continue;
    terms.emplace_back(e, normal(rng) / (1.0 + deg * deg));
  }
  return g.sample([&](std::span<const double> x) {
    auto q = quaternion_coordinates(x);
    double v = 0.0;
    for (const auto& [e, c] : terms) {
      double m = c;
      for (int i = 0; i < 4; ++i) m *= std::pow(q[i], e[i]);
      v += m;
    }
    return v;
  });
}

Vector trig_member(const DiscreteGenerator& g, std::mt19937_64& rng) {
  const auto& axes = g.lattice().axes;
  const int dim = static_cast<int>(axes.size());
  std::normal_distribution<double> normal;
  // Periodic axes use signed frequencies -3..3 with a phase; non-periodic axes
  // use cosines 0..3, folded in through |k|.
  auto ks = multi_indices(dim, -3, 3);
  struct Term {
    std::vector<int> k;
    double a, b;
  };
  std::vector<Term> terms;
  for (auto& k : ks) {
    bool skip = false;
    double k2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (!axes[i].periodic && k[i] < 0) skip = true;
      k2 += k[i] * k[i];
    }
    if (skip) continue;
    const double s = 1.0 / (1.0 + k2);
    const double a = normal(rng) * s;
    const double b = normal(rng) * s;
    terms.push_back({k, a, b});
  }
  return g.sample([&](std::span<const double> x) {
    double v = 0.0;
    for (const auto& t : terms) {
      double phase = 0.0, prod = 1.0;
      for (int i = 0; i < dim; ++i) {
        const auto& ax = axes[i];
        if (ax.periodic) {
          phase += 2.0 * std::numbers::pi * t.k[i] * (x[i] - ax.lo) / ax.length;
        } else {
          prod *= std::cos(std::numbers::pi * t.k[i] * (x[i] - ax.lo) / ax.length);
        }
      }
      v += prod * (t.a * std::cos(phase) + t.b * std::sin(phase));
    }
    return v;
  });
}

}  // namespace

std::vector<double> quaternion_coordinates(std::span<const double> e) {
  if (e.size() != 3) throw std::invalid_argument("Euler node must have three angles");
  const double phi = e[0], theta = e[1], psi = e[2];
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  return {c * std::cos(0.5 * (phi + psi)), c * std::sin(0.5 * (phi + psi)),
          s * std::cos(0.5 * (phi - psi)), s * std::sin(0.5 * (phi - psi))};
}

std::vector<TestFunction> random_family(const DiscreteGenerator& g, std::size_t count,
                                        std::uint64_t seed, FunctionKind kind) {
  const bool su2 = g.lattice().model == "su2";
  const char* tag = kind == FunctionKind::kPositive   ? "pos"
                    : kind == FunctionKind::kMeanZero ? "mz"
                                                      : "f";
  std::vector<TestFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = member_rng(seed, i);
    Vector v = su2 ? quaternion_member(g, rng) : trig_member(g, rng);
    switch (kind) {
      case FunctionKind::kSigned:
        break;
      case FunctionKind::kPositive: {
        const double m = v.cwiseAbs().maxCoeff();
        v = (kPositiveContrast * v / (m > 0.0 ? m : 1.0)).array().exp().matrix();
        break;
      }
      case FunctionKind::kMeanZero:
        v.array() -= g.mean(v);
        break;
    }
    out.push_back({std::string(tag) + "-" + std::to_string(seed) + "-" + std::to_string(i),
                   std::move(v)});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw std::invalid_argument("bad log grid");
  std::vector<double> t(n);
  if (n == 1) {
    t[0] = lo;
    return t;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) t[i] = std::exp(a + (b - a) * i / (n - 1));
  t.front() = lo;
  t.back() = hi;
  return t;
}

}  // namespace cdcalc::inequality
