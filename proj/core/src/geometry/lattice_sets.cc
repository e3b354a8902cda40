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

#include "cdcalc/geometry/lattice_sets.h"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cdcalc/inequality/test_functions.h"

namespace cdcalc::geometry {

namespace {

using Quat = std::array<double, 4>;

// Right multiplication by i and j for q = a + b i + c j + d k.
Quat times_i(const Quat& q) { return {-q[1], q[0], q[3], -q[2]}; }
Quat times_j(const Quat& q) { return {-q[2], -q[3], q[0], q[1]}; }
Quat times_k(const Quat& q) { return {-q[3], q[2], -q[1], q[0]}; }

double dot4(const Quat& a, const Quat& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Quat normalized(const Quat& v) {
  const double n = std::sqrt(dot4(v, v));
  if (!(n > 0.0)) throw std::invalid_argument("cap centre must be nonzero");
  return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

}  // namespace

double su2_cap_perimeter(const std::array<double, 4>& centre, double r, int resolution) {
  if (!(r > 0.0 && r < std::numbers::pi)) throw std::invalid_argument("cap radius must lie in (0, pi)");
  const Quat v = normalized(centre);
  // Orthonormal basis of v-perp by Gram-Schmidt on the coordinate axes.
  std::vector<Quat> basis;
  for (int a = 0; a < 4 && basis.size() < 3; ++a) {
    Quat e{};
    e[a] = 1.0;
    const double pv = dot4(e, v);
    for (int i = 0; i < 4; ++i) e[i] -= pv * v[i];
    for (const auto& b : basis) {
      const double pb = dot4(e, b);
      for (int i = 0; i < 4; ++i) e[i] -= pb * b[i];
    }
    const double n = std::sqrt(dot4(e, e));
    if (n < 1e-8) continue;
    for (auto& x : e) x /= n;
    basis.push_back(e);
  }
  using Rule = boost::math::quadrature::gauss<double, 10>;
  const double pi = std::numbers::pi;
  const int panels = std::max(1, resolution / 10);
  const int nphi = 2 * resolution;
  const double sr = std::sin(r), cr = std::cos(r);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = pi * p / panels, hi = pi * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t a = 0; a < Rule::abscissa().size(); ++a) {
      for (int sgn : {-1, 1}) {
        const double theta = mid + sgn * half * Rule::abscissa()[a];
        const double wt = Rule::weights()[a] * half;
        for (int k = 0; k < nphi; ++k) {
          const double phi = 2.0 * pi * k / nphi;
          Quat q{};
          for (int i = 0; i < 4; ++i) {
            const double w = std::sin(theta) * std::cos(phi) * basis[0][i] +
                             std::sin(theta) * std::sin(phi) * basis[1][i] +
                             std::cos(theta) * basis[2][i];
            q[i] = cr * v[i] + sr * w;
          }
          // Derivatives of f = <q, v> along the frame fields q e/2.
          const double xf = 0.5 * dot4(times_i(q), v), yf = 0.5 * dot4(times_j(q), v);
          const double zf = 0.5 * dot4(times_k(q), v);
          const double nh = std::hypot(xf, yf) / std::sqrt(xf * xf + yf * yf + zf * zf);
          // Boundary 2-sphere of Euclidean radius sin r; the frame metric
          // doubles lengths, so areas scale by 4.
          total += nh * 4.0 * sr * sr * std::sin(theta) * wt * (2.0 * pi / nphi);
        }
      }
    }
  }
  return total / (16.0 * pi * pi);
}

LatticeSet su2_cap(const DiscreteGenerator& g, const std::array<double, 4>& v, double r) {
  if (g.lattice().model != "su2") throw std::invalid_argument("su2_cap needs an su2 lattice");
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  if (!(n > 0.0)) throw std::invalid_argument("cap centre must be nonzero");
  const double c = std::cos(r);
  LatticeSet out;
  std::ostringstream os;
  os << "cap(" << v[0] / n << "," << v[1] / n << "," << v[2] / n << "," << v[3] / n << ";" << r << ")";
  out.id = os.str();
  out.perimeter = su2_cap_perimeter(v, r);
  out.indicator = g.sample([&](std::span<const double> x) {
    const auto q = inequality::quaternion_coordinates(x);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += q[i] * v[i] / n;
    return s >= c ? 1.0 : 0.0;
  });
  return out;
}

std::vector<LatticeSet> su2_cap_family(const DiscreteGenerator& g, int centres, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<LatticeSet> out;
  const double pi = std::numbers::pi;
  for (int c = 0; c < centres; ++c) {
    std::array<double, 4> v{};
    if (c < 4) {
      v[c] = 1.0;
    } else {
      for (auto& x : v) x = normal(rng);
    }
    for (double r : {pi / 8, pi / 4, 3 * pi / 8, pi / 2}) out.push_back(su2_cap(g, v, r));
  }
  return out;
}

double lattice_perimeter(const DiscreteGenerator& g, const HeatOperator& h, const Vector& indicator,
                         double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("smoothing time must be >= 0");
  const Vector smooth = eps > 0.0 ? h.apply(indicator, eps).values : indicator;
  return (g.gamma(smooth).cwiseSqrt().array() * g.mass().array()).sum();
}

double default_perimeter_time(const HeatOperator& h) {
  const double top = -h.eigenvalues()[h.modes() - 1];
  if (!h.complete()) throw std::invalid_argument("default perimeter time needs the full spectrum");
  return kPerimeterTimeFactor / top;
}

std::vector<inequality::CandidateMeasure> measure_sets(const DiscreteGenerator& g,
                                                       const std::vector<LatticeSet>& sets) {
  std::vector<inequality::CandidateMeasure> out;
  for (const auto& s : sets) out.push_back({s.id, g.mean(s.indicator), s.perimeter});
  return out;
}

}  // namespace cdcalc::geometry
