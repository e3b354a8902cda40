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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdcalc/certify/cd_params.h"
#include "cdcalc/symbolic/model.h"

namespace cdcalc::models {

using symbolic::Rational;
using symbolic::SubRiemannianModel;

// One axis of a lattice. Periodic axes have nodes lo + k*h, k = 0..points-1,
// and wrap. Non-periodic axes are cell-centred (nodes lo + (k+1/2) h) with
// reflecting ends, which is what the SU(2) polar angle needs.
struct LatticeAxis {
  double lo = 0.0;
  double length = 1.0;
  int points = 1;
  bool periodic = true;
  // Wrapping across this axis also moves coordinate `twist_axis` by
  // `twist` (forward wrap adds, backward wrap subtracts). -1 disables.
  int twist_axis = -1;
  double twist = 0.0;

  double spacing() const { return length / points; }
  double node(int k) const { return lo + (periodic ? k : k + 0.5) * spacing(); }
};

inline constexpr std::size_t kDefaultLatticeCap = 250'000;

struct PeriodicLatticeSpec {
  std::string model;
  std::vector<LatticeAxis> axes;
  std::size_t max_points = kDefaultLatticeCap;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t total_points() const;
  // Throws SizeCapExceeded when total_points() > max_points and
  // std::invalid_argument for non-positive lengths or point counts.
  void validate() const;
};

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CoordinateFunction = std::function<double(std::span<const double>)>;

// Frame used by the lattice discretization: fields[i][k] is the coefficient of
// d/dx_k in X_i, and density is the Lebesgue density of the reference measure.
struct LatticeFrame {
  int dim = 0;
  std::vector<std::vector<CoordinateFunction>> fields;
  CoordinateFunction density;
};

LatticeFrame lattice_frame_from_model(const SubRiemannianModel& m);

// Where the certifier may sample base points.
enum class PointDomain {
  kEuclidean,   // any chart point
  kUnitSphere,  // ambient chart of a compact group; points are projected to |x| = 1
};

struct ModelCatalogEntry {
  std::string name;
  SubRiemannianModel model;
  std::optional<int> homogeneous_dim;
  std::optional<certify::CDParams> reference_cd;
  std::optional<std::vector<int>> dilation;
  PointDomain point_domain = PointDomain::kEuclidean;
  LatticeFrame lattice_frame;
  PeriodicLatticeSpec default_lattice;
  std::string description;
};

// H^{2n+1} with X_i = d/dx_i - (y_i/2) d/dz, Y_i = d/dy_i + (x_i/2) d/dz, Z = d/dz.
// Coordinates are ordered (x_1..x_n, y_1..y_n, z).
ModelCatalogEntry heisenberg(int n);

// SU(2) with [X,Y]=Z, [Y,Z]=X, [Z,X]=Y, L = X^2 + Y^2, Gamma^Z(f) = (Zf)^2.
// The symbolic chart is the ambient quaternion space R^4 (linear fields
// q -> q*i/2, q*j/2, q*k/2); the lattice uses Euler angles (phi, theta, psi)
// over [0,2pi) x (0,pi) x [0,4pi) with Haar density sin(theta).
ModelCatalogEntry su2();

// Antisymmetric structure constants: structure[l](i, j) is the Z_l component of
// [X_i, X_j]. Each table is m x m, row-major.
struct CarnotStructure {
  int m = 0;
  std::vector<std::vector<Rational>> tables;
};

// Step-2 Carnot group in exponential coordinates (x_1..x_m, z_1..z_k):
// X_i = d/dx_i - 1/2 sum_{j,l} c^l_{ij} x_j d/dz_l, Z_l = d/dz_l.
// Throws std::invalid_argument for non-antisymmetric tables and
// std::domain_error if the step-2 check fails (a length-3 bracket is nonzero or
// the brackets do not span the vertical layer).
ModelCatalogEntry step2_carnot(const CarnotStructure& structure, std::string name = "carnot");

// Flat torus (R/2piZ)^dim with L = sum d_i^2 and no vertical frame.
ModelCatalogEntry flat_torus(int dim);

// Catalogue exposed through `models list`.
std::vector<std::string> catalog_names();
ModelCatalogEntry catalog_entry(const std::string& name);  // throws UnknownModel

// delta_lambda-composition f -> f o delta_lambda for an entry with dilations.
symbolic::ScalarField dilate(const ModelCatalogEntry& e, const symbolic::ScalarField& f,
                             const Rational& lambda);

}  // namespace cdcalc::models
