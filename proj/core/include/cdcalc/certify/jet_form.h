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
#include <span>
#include <vector>

#include "cdcalc/certify/cd_params.h"
#include "cdcalc/symbolic/model.h"

namespace cdcalc::certify {

using symbolic::Exponent;
using symbolic::Rational;
using symbolic::ScalarField;
using symbolic::SubRiemannianModel;

// CD parameters with exact rational entries, for symbolic evaluation.
struct ExactCDParams {
  Rational rho1, rho2, kappa, d;
  static ExactCDParams from(const CDParams& p);
};

// Quadratic form on 2-jets at a base point x:
//   Q(c) = [Gamma_2 + nu Gamma_2^Z - (1/d)(Lf)^2 - (rho1 - kappa/nu) Gamma - rho2 Gamma^Z](f_c)(x),
// f_c = sum_a c_a (y - x)^{basis[a]}, basis = centred monomials of degree 1 and 2.
// The constant monomial is not part of the basis.
struct JetQuadraticForm {
  std::vector<double> base;
  std::vector<Exponent> basis;
  Eigen::MatrixXd matrix;
  double nu = 1.0;
  CDParams params;
};

// The five bilinear terms of the CD inequality evaluated on the centred jet
// basis at one point. Combining them for new (params, nu) is a cheap linear
// operation, which is what bisection on rho1 relies on.
struct JetTerms {
  std::vector<double> base;
  Eigen::MatrixXd gamma2, gamma2_Z, laplacian_sq, gamma, gamma_Z;

  Eigen::MatrixXd combine(const CDParams& p, double nu) const;
};

// Precomputes the bilinear terms on the uncentred monomial basis once per
// model; each evaluation point then costs only polynomial evaluation plus a
// change of basis.
class JetFormAssembler {
 public:
  explicit JetFormAssembler(const SubRiemannianModel& model);

  const SubRiemannianModel& model() const { return model_; }
  // Exponents of degree 1 then degree 2, in a fixed order.
  const std::vector<Exponent>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }

  JetTerms terms_at(std::span<const double> x) const;
  JetQuadraticForm form_at(std::span<const double> x, const CDParams& p, double nu) const;

  // Exact matrix of the form on the centred basis at a rational point.
  std::vector<std::vector<Rational>> exact_matrix(std::span<const Rational> x,
                                                  const ExactCDParams& p,
                                                  const Rational& nu) const;

 private:
  SubRiemannianModel model_;
  std::vector<Exponent> basis_;
  // Symmetric polynomial matrices on the uncentred basis, stored upper-triangular row-major.
  std::vector<ScalarField> gamma2_, gamma2_Z_, lap_sq_, gamma_, gamma_Z_;
  std::vector<symbolic::CompiledPolynomial> c_gamma2_, c_gamma2_Z_, c_lap_sq_, c_gamma_, c_gamma_Z_;
};

// Throws std::invalid_argument for nu <= 0.
JetQuadraticForm jet_form(const SubRiemannianModel& m, std::span<const double> x,
                          const CDParams& p, double nu);

// Polynomial Gamma_2(f) + nu Gamma_2^Z(f) - (1/d)(Lf)^2 - (rho1 - kappa/nu) Gamma(f) - rho2 Gamma^Z(f).
ScalarField cd_deficit(const SubRiemannianModel& m, const ScalarField& f, const ExactCDParams& p,
                       const Rational& nu);

// Coefficients of the truncated 2-jet of f at x on the centred basis.
std::vector<Rational> jet_coefficients(const ScalarField& f, std::span<const Rational> x,
                                       const std::vector<Exponent>& basis);

// sum_a c_a (y - x)^{basis[a]} as an exact polynomial.
ScalarField jet_polynomial(std::span<const Rational> c, std::span<const Rational> x,
                           const std::vector<Exponent>& basis);

struct PsdResult {
  bool psd = false;
  double min_eig = 0.0;
  double spectral_radius = 0.0;
  Eigen::VectorXd min_eigvec;
};

// psd iff smallest eigenvalue >= -tol (1 + spectral radius). Throws
// std::runtime_error when the matrix has non-finite entries.
PsdResult psd_test(const Eigen::MatrixXd& m, double tol);
bool is_psd(const JetQuadraticForm& f, double tol);

}  // namespace cdcalc::certify
