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

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cdcalc/models/catalog.h"

namespace cdcalc::semigroup {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Discrete L on a lattice. Each horizontal field X_i is discretized by
// one-sided differences
//   (D_i^+ f)(p) = sum_k a_ik(p + h_k e_k / 2) (f(p + e_k) - f(p)) / h_k
// (and the mirrored D_i^-), and the Dirichlet form is
//   <f, -Lf>_mass = sum_i 1/2 (|D_i^+ f|^2 + |D_i^- f|^2)_mass,
// so symmetry, L1 = 0 and -L >= 0 hold by construction.
// The mass is normalized to total 1; `volume` keeps the physical measure.
class DiscreteGenerator {
 public:
  DiscreteGenerator(models::PeriodicLatticeSpec lattice, SparseMatrix stiffness, Vector mass,
                    double volume, std::vector<SparseMatrix> forward,
                    std::vector<SparseMatrix> backward);

  // Generator from a bare symmetric stiffness matrix (no frame); used for
  // sanity inputs such as disconnected graphs.
  static DiscreteGenerator from_stiffness(SparseMatrix stiffness, Vector mass);

  const models::PeriodicLatticeSpec& lattice() const { return lattice_; }
  std::size_t size() const { return static_cast<std::size_t>(mass_.size()); }
  const Vector& mass() const { return mass_; }
  double volume() const { return volume_; }
  // K with f^T K g = <f, -Lg>_mass.
  const SparseMatrix& stiffness() const { return stiffness_; }
  // L = -M^{-1} K.
  const SparseMatrix& matrix() const { return matrix_; }
  const std::vector<SparseMatrix>& forward() const { return forward_; }
  const std::vector<SparseMatrix>& backward() const { return backward_; }
  int frame_size() const { return static_cast<int>(forward_.size()); }

  Vector apply(const Vector& f) const { return matrix_ * f; }
  // Discrete carre du champ sum_i 1/2 ((D_i^+ f)^2 + (D_i^- f)^2), pointwise.
  Vector gamma(const Vector& f) const;
  Vector gamma(const Vector& f, const Vector& g) const;

  // Lattice coordinates of node `index` (axis 0 varies fastest).
  std::vector<double> node(std::size_t index) const;
  std::size_t index_of(std::span<const int> k) const;
  // Values of `fn` at every node.
  Vector sample(const std::function<double(std::span<const double>)>& fn) const;

  double inner(const Vector& f, const Vector& g) const { return (f.array() * g.array() * mass_.array()).sum(); }
  double mean(const Vector& f) const { return (f.array() * mass_.array()).sum(); }
  // ||f||_p with respect to the mass; p = infinity allowed.
  double norm(const Vector& f, double p) const;

 private:
  models::PeriodicLatticeSpec lattice_;
  SparseMatrix stiffness_;
  SparseMatrix matrix_;
  Vector mass_;
  double volume_;
  std::vector<SparseMatrix> forward_, backward_;
};

// Throws SizeCapExceeded when the lattice is over its cap.
DiscreteGenerator build_generator(const models::ModelCatalogEntry& entry,
                                  const models::PeriodicLatticeSpec& spec);
DiscreteGenerator build_generator(const models::PeriodicLatticeSpec& spec);

}  // namespace cdcalc::semigroup
