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

#include <optional>
#include <string>
#include <vector>

#include "cdcalc/symbolic/polynomial.h"

namespace cdcalc::symbolic {

// First-order differential operator sum_i X^i d/dx_i with polynomial
// coefficients.
class VectorField {
 public:
  explicit VectorField(std::vector<ScalarField> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<ScalarField>& components() const { return components_; }
  const ScalarField& operator[](int i) const { return components_[i]; }

  // Coordinate field d/dx_i.
  static VectorField coordinate(int dim, int i);

  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<ScalarField> components_;
};

// X f = sum_i X^i df/dx_i, exact.
ScalarField apply(const VectorField& x, const ScalarField& f);

// Lie bracket [X, Y] = XY - YX.
VectorField bracket(const VectorField& x, const VectorField& y);

// sum_i d(X^i)/dx_i; zero iff X is divergence-free for Lebesgue measure.
ScalarField divergence(const VectorField& x);

// A chart of a sub-Riemannian structure: L = sum_i X_i^2 (+ drift) with a
// vertical frame Z_j defining Gamma^Z(f, g) = sum_j (Z_j f)(Z_j g).
class SubRiemannianModel {
 public:
  SubRiemannianModel(std::string label, int chart_dim, std::vector<VectorField> horizontal,
                     std::vector<VectorField> vertical,
                     std::optional<VectorField> drift = std::nullopt);

  const std::string& label() const { return label_; }
  int chart_dim() const { return chart_dim_; }
  const std::vector<VectorField>& horizontal() const { return horizontal_; }
  const std::vector<VectorField>& vertical() const { return vertical_; }
  const std::optional<VectorField>& drift() const { return drift_; }

 private:
  std::string label_;
  int chart_dim_;
  std::vector<VectorField> horizontal_;
  std::vector<VectorField> vertical_;
  std::optional<VectorField> drift_;
};

ScalarField sub_laplacian(const SubRiemannianModel& m, const ScalarField& f);

// L^Z = sum_j Z_j^2, the operator whose carre du champ is Gamma^Z.
ScalarField vertical_laplacian(const SubRiemannianModel& m, const ScalarField& f);

// Gamma(f, g) = 1/2 (L(fg) - f Lg - g Lf). The frame formula sum_i (X_i f)(X_i g)
// is evaluated alongside; a mismatch throws std::logic_error.
ScalarField gamma(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g);
ScalarField gamma(const SubRiemannianModel& m, const ScalarField& f);
ScalarField gamma_Z(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g);
ScalarField gamma_Z(const SubRiemannianModel& m, const ScalarField& f);

// Frame formulas only, without the definitional cross-check.
ScalarField gamma_frame(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g);
ScalarField gamma_Z_frame(const SubRiemannianModel& m, const ScalarField& f,
                          const ScalarField& g);

// Gamma_2(f, g) = 1/2 [L Gamma(f, g) - Gamma(f, Lg) - Gamma(g, Lf)] and its
// vertical analogue built from Gamma^Z.
ScalarField gamma2(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g);
ScalarField gamma2(const SubRiemannianModel& m, const ScalarField& f);
ScalarField gamma2_Z(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g);
ScalarField gamma2_Z(const SubRiemannianModel& m, const ScalarField& f);

// Gamma(f, Gamma^Z(f)) == Gamma^Z(f, Gamma(f)) as polynomials.
bool gamma_forms_commute(const SubRiemannianModel& m, const ScalarField& f);

}  // namespace cdcalc::symbolic
