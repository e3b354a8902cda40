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

#include "cdcalc/certify/jet_form.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cdcalc::certify {

namespace {

std::vector<Exponent> jet_basis(int n) {
  std::vector<Exponent> basis;
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Exponent e(n, 0);
      e[i] += 1;
      e[j] += 1;
      basis.push_back(e);
    }
  }
  return basis;
}

std::size_t tri_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

// T(alpha, beta): coefficient of the uncentred monomial alpha in the centred
// monomial beta, constants dropped.
template <typename Scalar, typename Matrix>
void centring_matrix(const std::vector<Exponent>& basis, std::span<const Scalar> a, Matrix& t) {
  const int n = static_cast<int>(a.size());
  std::map<Exponent, int> index;
  for (int k = 0; k < static_cast<int>(basis.size()); ++k) index[basis[k]] = k;
  for (int beta = 0; beta < static_cast<int>(basis.size()); ++beta) {
    const Exponent& e = basis[beta];
    t(beta, beta) = Scalar(1);
    std::vector<int> vars;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < e[i]; ++k) vars.push_back(i);
    }
    if (vars.size() == 2) {
      const int i = vars[0];
      const int j = vars[1];
      Exponent ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      t(index[ei], beta) = t(index[ei], beta) - a[j];
      t(index[ej], beta) = t(index[ej], beta) - a[i];
    }
  }
}

Eigen::MatrixXd evaluate_sym(const std::vector<symbolic::CompiledPolynomial>& polys, int size,
                             std::span<const double> x) {
  Eigen::MatrixXd m(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      const auto& p = polys[tri_index(i, j, size)];
      const double v = p.empty() ? 0.0 : p(x);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix evaluate_sym_exact(const std::vector<ScalarField>& polys, int size,
                                  std::span<const Rational> x) {
  RationalMatrix m(size, std::vector<Rational>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      Rational v = polys[tri_index(i, j, size)].evaluate(x);
      m[i][j] = v;
      m[j][i] = v;
    }
  }
  return m;
}

struct RationalMatrixRef {
  RationalMatrix& m;
  Rational& operator()(int i, int j) { return m[i][j]; }
};

}  // namespace

ExactCDParams ExactCDParams::from(const CDParams& p) {
  return ExactCDParams{Rational(p.rho1), Rational(p.rho2), Rational(p.kappa), Rational(p.d)};
}

Eigen::MatrixXd JetTerms::combine(const CDParams& p, double nu) const {
  return gamma2 + nu * gamma2_Z - (1.0 / p.d) * laplacian_sq - (p.rho1 - p.kappa / nu) * gamma -
         p.rho2 * gamma_Z;
}

JetFormAssembler::JetFormAssembler(const SubRiemannianModel& model)
    : model_(model), basis_(jet_basis(model.chart_dim())) {
  const int n = model_.chart_dim();
  const int size = static_cast<int>(basis_.size());
  std::vector<ScalarField> u, lu;
  for (const auto& e : basis_) {
    u.push_back(ScalarField::monomial(e));
    lu.push_back(symbolic::sub_laplacian(model_, u.back()));
  }
  const Rational half(1, 2);
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) {
      ScalarField g = symbolic::gamma_frame(model_, u[i], u[j]);
      ScalarField gz = symbolic::gamma_Z_frame(model_, u[i], u[j]);
      gamma2_.push_back(half * (symbolic::sub_laplacian(model_, g) -
                                symbolic::gamma_frame(model_, u[i], lu[j]) -
                                symbolic::gamma_frame(model_, u[j], lu[i])));
      gamma2_Z_.push_back(half * (symbolic::sub_laplacian(model_, gz) -
                                  symbolic::gamma_Z_frame(model_, u[i], lu[j]) -
                                  symbolic::gamma_Z_frame(model_, u[j], lu[i])));
      lap_sq_.push_back(lu[i] * lu[j]);
      gamma_.push_back(std::move(g));
      gamma_Z_.push_back(std::move(gz));
    }
  }
  auto compile = [](const std::vector<ScalarField>& in, std::vector<symbolic::CompiledPolynomial>& out) {
    out.reserve(in.size());
    for (const auto& p : in) {
      out.push_back(p.is_zero() ? symbolic::CompiledPolynomial() : symbolic::CompiledPolynomial(p));
    }
  };
  compile(gamma2_, c_gamma2_);
  compile(gamma2_Z_, c_gamma2_Z_);
  compile(lap_sq_, c_lap_sq_);
  compile(gamma_, c_gamma_);
  compile(gamma_Z_, c_gamma_Z_);
  (void)n;
}

JetTerms JetFormAssembler::terms_at(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != model_.chart_dim()) {
    throw std::invalid_argument("jet form base point has wrong dimension");
  }
  const int size = this->size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
  centring_matrix<double>(basis_, x, t);
  auto centred = [&](const std::vector<symbolic::CompiledPolynomial>& polys) {
    Eigen::MatrixXd a = evaluate_sym(polys, size, x);
    Eigen::MatrixXd m = t.transpose() * a * t;
    return Eigen::MatrixXd(0.5 * (m + m.transpose()));
  };
  JetTerms terms;
  terms.base.assign(x.begin(), x.end());
  terms.gamma2 = centred(c_gamma2_);
  terms.gamma2_Z = centred(c_gamma2_Z_);
  terms.laplacian_sq = centred(c_lap_sq_);
  terms.gamma = centred(c_gamma_);
  terms.gamma_Z = centred(c_gamma_Z_);
  return terms;
}

JetQuadraticForm JetFormAssembler::form_at(std::span<const double> x, const CDParams& p,
                                           double nu) const {
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  p.validate();
  JetTerms terms = terms_at(x);
  return JetQuadraticForm{terms.base, basis_, terms.combine(p, nu), nu, p};
}

std::vector<std::vector<Rational>> JetFormAssembler::exact_matrix(std::span<const Rational> x,
                                                                  const ExactCDParams& p,
                                                                  const Rational& nu) const {
  if (nu <= 0) throw std::invalid_argument("nu must be positive");
  const int size = this->size();
  RationalMatrix a(size, std::vector<Rational>(size));
  {
    RationalMatrix g2 = evaluate_sym_exact(gamma2_, size, x);
    RationalMatrix g2z = evaluate_sym_exact(gamma2_Z_, size, x);
    RationalMatrix lsq = evaluate_sym_exact(lap_sq_, size, x);
    RationalMatrix g = evaluate_sym_exact(gamma_, size, x);
    RationalMatrix gz = evaluate_sym_exact(gamma_Z_, size, x);
    const Rational lin = p.rho1 - p.kappa / nu;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        a[i][j] = g2[i][j] + nu * g2z[i][j] - lsq[i][j] / p.d - lin * g[i][j] - p.rho2 * gz[i][j];
      }
    }
  }
  RationalMatrix t(size, std::vector<Rational>(size, Rational(0)));
  RationalMatrixRef tref{t};
  centring_matrix<Rational>(basis_, x, tref);
  RationalMatrix at(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      Rational s = 0;
      for (int k = 0; k < size; ++k) {
        if (t[k][j] != 0) s += a[i][k] * t[k][j];
      }
      at[i][j] = s;
    }
  }
  RationalMatrix m(size, std::vector<Rational>(size, Rational(0)));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      Rational s = 0;
      for (int k = 0; k < size; ++k) {
        if (t[k][i] != 0) s += t[k][i] * at[k][j];
      }
      m[i][j] = s;
    }
  }
  return m;
}

JetQuadraticForm jet_form(const SubRiemannianModel& m, std::span<const double> x,
                          const CDParams& p, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  return JetFormAssembler(m).form_at(x, p, nu);
}

ScalarField cd_deficit(const SubRiemannianModel& m, const ScalarField& f, const ExactCDParams& p,
                       const Rational& nu) {
  if (nu <= 0) throw std::invalid_argument("nu must be positive");
  ScalarField lf = symbolic::sub_laplacian(m, f);
  return symbolic::gamma2(m, f) + nu * symbolic::gamma2_Z(m, f) - (Rational(1) / p.d) * (lf * lf) -
         (p.rho1 - p.kappa / nu) * symbolic::gamma_frame(m, f, f) -
         p.rho2 * symbolic::gamma_Z_frame(m, f, f);
}

std::vector<Rational> jet_coefficients(const ScalarField& f, std::span<const Rational> x,
                                       const std::vector<Exponent>& basis) {
  std::vector<Rational> c;
  c.reserve(basis.size());
  for (const auto& e : basis) {
    ScalarField d = f;
    Rational factorial = 1;
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
      for (int k = 1; k <= e[i]; ++k) {
        d = d.derivative(i);
        factorial *= k;
      }
    }
    c.push_back(d.evaluate(x) / factorial);
  }
  return c;
}

ScalarField jet_polynomial(std::span<const Rational> c, std::span<const Rational> x,
                           const std::vector<Exponent>& basis) {
  const int n = static_cast<int>(x.size());
  ScalarField f(n);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (c[a] == 0) continue;
    ScalarField term = ScalarField::constant(n, c[a]);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < basis[a][i]; ++k) {
        term = term * (ScalarField::coordinate(n, i) - ScalarField::constant(n, x[i]));
      }
    }
    f += term;
  }
  return f;
}

PsdResult psd_test(const Eigen::MatrixXd& m, double tol) {
  if (!m.allFinite()) throw std::runtime_error("eigensolver failure: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failure: no convergence");
  PsdResult r;
  const auto& ev = es.eigenvalues();
  r.min_eig = ev.size() > 0 ? ev(0) : 0.0;
  r.spectral_radius = ev.size() > 0 ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
  r.psd = r.min_eig >= -tol * (1.0 + r.spectral_radius);
  if (ev.size() > 0) {
    r.min_eigvec = es.eigenvectors().col(0);
    // Sign convention: first nonzero component positive.
    for (int i = 0; i < r.min_eigvec.size(); ++i) {
      if (std::abs(r.min_eigvec(i)) > 1e-14) {
        if (r.min_eigvec(i) < 0) r.min_eigvec = -r.min_eigvec;
        break;
      }
    }
  }
  return r;
}

bool is_psd(const JetQuadraticForm& f, double tol) { return psd_test(f.matrix, tol).psd; }

}  // namespace cdcalc::certify
