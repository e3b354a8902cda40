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

#include "cdcalc/models/catalog.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdcalc::models {

using symbolic::Exponent;
using symbolic::ScalarField;
using symbolic::VectorField;

std::size_t PeriodicLatticeSpec::total_points() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(std::max(a.points, 0));
  return n;
}

void PeriodicLatticeSpec::validate() const {
  if (axes.empty()) throw std::invalid_argument("lattice needs at least one axis");
  for (const auto& a : axes) {
    if (a.points <= 0) throw std::invalid_argument("lattice point counts must be positive");
    if (!(a.length > 0.0)) throw std::invalid_argument("lattice box lengths must be positive");
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const auto& a = axes[i];
    if (a.twist_axis < 0) continue;
    if (!a.periodic || a.twist_axis >= static_cast<int>(axes.size()) ||
        a.twist_axis == static_cast<int>(i) || !axes[a.twist_axis].periodic) {
      throw std::invalid_argument("lattice twist must join two distinct periodic axes");
    }
    const double nodes = a.twist / axes[a.twist_axis].spacing();
    if (std::abs(nodes - std::round(nodes)) > 1e-9) {
      throw std::invalid_argument("lattice twist must be a whole number of nodes");
    }
  }
  if (total_points() > max_points) {
    throw SizeCapExceeded("lattice has " + std::to_string(total_points()) +
                          " points, cap is " + std::to_string(max_points));
  }
}

LatticeFrame lattice_frame_from_model(const SubRiemannianModel& m) {
  LatticeFrame frame;
  frame.dim = m.chart_dim();
  for (const auto& x : m.horizontal()) {
    std::vector<CoordinateFunction> comps;
    for (const auto& c : x.components()) {
      if (c.is_zero()) {
        comps.push_back(nullptr);
      } else {
        comps.push_back(symbolic::CompiledPolynomial(c));
      }
    }
    frame.fields.push_back(std::move(comps));
  }
  frame.density = [](std::span<const double>) { return 1.0; };
  return frame;
}

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField coord(int dim, int i, const Rational& c = 1) {
  Exponent e(dim, 0);
  e[i] = 1;
  return ScalarField::monomial(e, c);
}

PeriodicLatticeSpec cube_lattice(const std::string& name, int dim, int points) {
  PeriodicLatticeSpec spec;
  spec.model = name;
  for (int i = 0; i < dim; ++i) spec.axes.push_back({-kPi, 2.0 * kPi, points, true});
  return spec;
}

}  // namespace

ModelCatalogEntry heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("heisenberg(n) needs n >= 1");
  const int dim = 2 * n + 1;
  const int z = 2 * n;
  const Rational half(1, 2);
  std::vector<VectorField> horizontal;
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarField> xi(dim, ScalarField(dim));
    xi[i] = ScalarField::constant(dim, 1);
    xi[z] = coord(dim, n + i, -half);
    horizontal.emplace_back(std::move(xi));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarField> yi(dim, ScalarField(dim));
    yi[n + i] = ScalarField::constant(dim, 1);
    yi[z] = coord(dim, i, half);
    horizontal.emplace_back(std::move(yi));
  }
  std::vector<VectorField> vertical{VectorField::coordinate(dim, z)};
  const std::string name = n == 1 ? "heisenberg" : "heisenberg" + std::to_string(n);
  SubRiemannianModel model(name, dim, std::move(horizontal), std::move(vertical));

  ModelCatalogEntry e{.name = name,
                      .model = model,
                      .homogeneous_dim = 2 * n + 2,
                      .reference_cd = certify::CDParams{0.0, n / 2.0, 1.0, 2.0 * n},
                      .dilation = std::vector<int>(dim, 1),
                      .point_domain = PointDomain::kEuclidean,
                      .lattice_frame = lattice_frame_from_model(model),
                      .default_lattice = cube_lattice(name, dim, n == 1 ? 16 : 6),
                      .description = "Heisenberg group H^" + std::to_string(dim) +
                                     " (Sasakian, symmetric frame); lattice is the periodic "
                                     "box wrap of the polynomial frame"};
  (*e.dilation)[z] = 2;
  return e;
}

ModelCatalogEntry su2() {
  // Right multiplication by i/2, j/2, k/2 on q = a + b i + c j + d k.
  const int dim = 4;
  const Rational h(1, 2);
  auto field = [&](int s0, int i0, int s1, int i1, int s2, int i2, int s3, int i3) {
    std::vector<ScalarField> comps{coord(dim, i0, h * s0), coord(dim, i1, h * s1),
                                   coord(dim, i2, h * s2), coord(dim, i3, h * s3)};
    return VectorField(std::move(comps));
  };
  // q i = (-b, a, d, -c), q j = (-c, -d, a, b), q k = (-d, c, -b, a)
  VectorField x = field(-1, 1, 1, 0, 1, 3, -1, 2);
  VectorField y = field(-1, 2, -1, 3, 1, 0, 1, 1);
  VectorField zf = field(-1, 3, 1, 2, -1, 1, 1, 0);
  SubRiemannianModel model("su2", dim, {x, y}, {zf});

  LatticeFrame frame;
  frame.dim = 3;
  // Left-invariant fields in Euler angles (phi, theta, psi):
  //   E1 = sin(psi)/sin(theta) d_phi + cos(psi) d_theta - cot(theta) sin(psi) d_psi
  //   E2 = cos(psi)/sin(theta) d_phi - sin(psi) d_theta - cot(theta) cos(psi) d_psi
  // with [E1,E2] = E3 = d_psi.
  frame.fields = {
      {[](std::span<const double> p) { return std::sin(p[2]) / std::sin(p[1]); },
       [](std::span<const double> p) { return std::cos(p[2]); },
       [](std::span<const double> p) { return -std::cos(p[1]) * std::sin(p[2]) / std::sin(p[1]); }},
      {[](std::span<const double> p) { return std::cos(p[2]) / std::sin(p[1]); },
       [](std::span<const double> p) { return -std::sin(p[2]); },
       [](std::span<const double> p) { return -std::cos(p[1]) * std::cos(p[2]) / std::sin(p[1]); }},
  };
  frame.density = [](std::span<const double> p) { return std::sin(p[1]); };

  PeriodicLatticeSpec lattice;
  lattice.model = "su2";
  // A full turn in phi is a half turn in psi on SU(2).
  lattice.axes = {{0.0, 2.0 * kPi, 12, true, 2, 2.0 * kPi},
                  {0.0, kPi, 12, false},
                  {0.0, 4.0 * kPi, 24, true}};

  return ModelCatalogEntry{
      .name = "su2",
      .model = model,
      .homogeneous_dim = std::nullopt,
      // rho1 is the value returned by the certifier on the default grids.
      .reference_cd = certify::CDParams{1.0, 0.5, 1.0, 2.0},
      .dilation = std::nullopt,
      .point_domain = PointDomain::kUnitSphere,
      .lattice_frame = std::move(frame),
      .default_lattice = lattice,
      .description = "SU(2) = S^3 (Sasakian, n=1); symbolic chart is ambient R^4, lattice uses "
                     "Euler angles with Haar density"};
}

ModelCatalogEntry step2_carnot(const CarnotStructure& s, std::string name) {
  const int m = s.m;
  const int k = static_cast<int>(s.tables.size());
  if (m < 2) throw std::invalid_argument("step-2 Carnot group needs m >= 2 horizontal fields");
  if (k < 1) throw std::invalid_argument("step-2 Carnot group needs at least one vertical direction");
  for (const auto& t : s.tables) {
    if (static_cast<int>(t.size()) != m * m) {
      throw std::invalid_argument("structure table must be m x m");
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (t[i * m + j] != -t[j * m + i]) {
          throw std::invalid_argument("structure table is not antisymmetric");
        }
      }
    }
  }
  const int dim = m + k;
  const Rational half(1, 2);
  std::vector<VectorField> horizontal;
  for (int i = 0; i < m; ++i) {
    std::vector<ScalarField> comps(dim, ScalarField(dim));
    comps[i] = ScalarField::constant(dim, 1);
    for (int l = 0; l < k; ++l) {
      for (int j = 0; j < m; ++j) {
        const Rational& c = s.tables[l][i * m + j];
        if (c != 0) comps[m + l] += coord(dim, j, -half * c);
      }
    }
    horizontal.emplace_back(std::move(comps));
  }
  std::vector<VectorField> vertical;
  for (int l = 0; l < k; ++l) vertical.push_back(VectorField::coordinate(dim, m + l));

  // Step-2 check: brackets are vertical and constant, length-3 brackets vanish,
  // and the brackets span the vertical layer.
  std::vector<std::vector<Rational>> spans;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      VectorField b = bracket(horizontal[i], horizontal[j]);
      for (int l = 0; l < m; ++l) {
        VectorField bb = bracket(horizontal[l], b);
        for (const auto& c : bb.components()) {
          if (!c.is_zero()) throw std::domain_error("step-2 check failed: nonzero length-3 bracket");
        }
      }
      std::vector<Rational> row(k);
      for (int l = 0; l < k; ++l) row[l] = b[m + l].coefficient(Exponent(dim, 0));
      spans.push_back(std::move(row));
    }
  }
  // Rank of the bracket vectors over Q.
  int rank = 0;
  for (int col = 0; col < k && rank < static_cast<int>(spans.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(spans.size()); ++r) {
      if (spans[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(spans[rank], spans[pivot]);
    for (int r = 0; r < static_cast<int>(spans.size()); ++r) {
      if (r == rank || spans[r][col] == 0) continue;
      Rational f = spans[r][col] / spans[rank][col];
      for (int c = 0; c < k; ++c) spans[r][c] -= f * spans[rank][c];
    }
    ++rank;
  }
  if (rank != k) throw std::domain_error("step-2 check failed: brackets do not span vertical layer");

  SubRiemannianModel model(name, dim, std::move(horizontal), std::move(vertical));
  std::vector<int> weights(dim, 1);
  for (int l = 0; l < k; ++l) weights[m + l] = 2;
  return ModelCatalogEntry{.name = name,
                           .model = model,
                           .homogeneous_dim = m + 2 * k,
                           .reference_cd = std::nullopt,
                           .dilation = weights,
                           .point_domain = PointDomain::kEuclidean,
                           .lattice_frame = lattice_frame_from_model(model),
                           .default_lattice = cube_lattice(name, dim, dim <= 3 ? 16 : 8),
                           .description = "step-2 Carnot group with " + std::to_string(m) +
                                          " horizontal and " + std::to_string(k) +
                                          " vertical directions"};
}

ModelCatalogEntry flat_torus(int dim) {
  if (dim < 1) throw std::invalid_argument("flat_torus needs dim >= 1");
  std::vector<VectorField> horizontal;
  for (int i = 0; i < dim; ++i) horizontal.push_back(VectorField::coordinate(dim, i));
  const std::string name = "torus" + std::to_string(dim);
  SubRiemannianModel model(name, dim, std::move(horizontal), {});
  PeriodicLatticeSpec lattice;
  lattice.model = name;
  for (int i = 0; i < dim; ++i) lattice.axes.push_back({0.0, 2.0 * kPi, dim == 1 ? 64 : 16, true});
  return ModelCatalogEntry{.name = name,
                           .model = model,
                           .homogeneous_dim = dim,
                           .reference_cd = std::nullopt,
                           .dilation = std::vector<int>(dim, 1),
                           .point_domain = PointDomain::kEuclidean,
                           .lattice_frame = lattice_frame_from_model(model),
                           .default_lattice = lattice,
                           .description = "flat torus, Riemannian sanity model (no vertical frame)"};
}

namespace {

ModelCatalogEntry carnot32() {
  // [X1, X2] = Z1, [X1, X3] = Z2.
  CarnotStructure s;
  s.m = 3;
  std::vector<Rational> t1(9, 0), t2(9, 0);
  t1[0 * 3 + 1] = 1;
  t1[1 * 3 + 0] = -1;
  t2[0 * 3 + 2] = 1;
  t2[2 * 3 + 0] = -1;
  s.tables = {t1, t2};
  ModelCatalogEntry e = step2_carnot(s, "carnot32");
  e.reference_cd = certify::CDParams{0.0, 0.5, 2.0, 3.0};
  return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"heisenberg", "heisenberg2", "su2", "carnot32", "torus1", "torus3"};
}

ModelCatalogEntry catalog_entry(const std::string& name) {
  if (name == "heisenberg") return heisenberg(1);
  if (name == "heisenberg2") return heisenberg(2);
  if (name == "su2") return su2();
  if (name == "carnot32") return carnot32();
  if (name == "torus1") return flat_torus(1);
  if (name == "torus3") return flat_torus(3);
  throw UnknownModel("unknown model '" + name + "'");
}

symbolic::ScalarField dilate(const ModelCatalogEntry& e, const symbolic::ScalarField& f,
                             const Rational& lambda) {
  if (!e.dilation) throw std::invalid_argument("model " + e.name + " has no dilation structure");
  return f.dilate(*e.dilation, lambda);
}

}  // namespace cdcalc::models
