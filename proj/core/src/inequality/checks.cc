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

#include "cdcalc/inequality/checks.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdcalc::inequality {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd stack(const std::vector<TestFunction>& fs, std::size_t n) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(fs.size()));
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (static_cast<std::size_t>(fs[j].values.size()) != n) {
      throw std::invalid_argument("test function size does not match the lattice");
    }
    out.col(static_cast<Eigen::Index>(j)) = fs[j].values;
  }
  return out;
}

InequalityReport start(const std::string& name, const CDParams& p, double tol) {
  InequalityReport r;
  r.name = name;
  r.params = p;
  r.tolerance = tol;
  return r;
}

Vector grad_norm(const DiscreteGenerator& g, const Vector& f) { return g.gamma(f).cwiseSqrt(); }

}  // namespace

void require_positive(const CDParams& p, const std::string& check) {
  if (!(p.rho1 > 0.0)) {
    throw RegimeError(check + " needs rho1 > 0; got rho1 = " + std::to_string(p.rho1));
  }
}

InequalityReport check_li_yau(const DiscreteGenerator& g, const HeatOperator& h,
                              const CDParams& p, Regime regime,
                              const std::vector<TestFunction>& fs,
                              const std::vector<double>& times, double tol) {
  p.validate();
  if (regime == Regime::kPositive) require_positive(p, "li-yau (positive regime)");
  for (const auto& f : fs) {
    if ((f.values.array() <= 0.0).any()) {
      throw std::invalid_argument("Li-Yau needs positive test functions (" + f.id + ")");
    }
  }
  auto r = start(regime == Regime::kZero ? "li-yau-zero" : "li-yau-positive", p, tol);
  const Eigen::MatrixXd c = h.coefficients_batch(stack(fs, g.size()));
  std::size_t nonpositive = 0;
  for (double t : times) {
    const auto k = regime == Regime::kZero ? li_yau_zero(p, t) : li_yau_positive(p, t);
    const Eigen::MatrixXd u = h.synthesize_batch(c, t);
    const Eigen::MatrixXd lu = h.synthesize_batch(c, t, 1);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const Vector uj = u.col(static_cast<Eigen::Index>(j));
      if ((uj.array() <= 0.0).any()) {
        ++nonpositive;
        Eigen::Index at = 0;
        uj.minCoeff(&at);
        r.record(kInf, 0.0, fs[j].id, t, at);
        continue;
      }
      const Vector lhs = g.gamma(uj.array().log().matrix());
      const Vector rhs = (k.a * lu.col(static_cast<Eigen::Index>(j)).array() / uj.array() + k.b).matrix();
      for (Eigen::Index x = 0; x < lhs.size(); ++x) r.record(lhs[x], rhs[x], fs[j].id, t, x);
    }
  }
  if (nonpositive > 0) {
    r.notes.push_back("P_t f not positive for " + std::to_string(nonpositive) + " (f, t) pairs");
  }
  return r;
}

InequalityReport check_gradient_bounds(const DiscreteGenerator& g, const HeatOperator& h,
                                       const CDParams& p, Regime regime,
                                       const std::vector<TestFunction>& fs,
                                       const std::vector<double>& times, double pnorm,
                                       double tol) {
  p.validate();
  if (regime == Regime::kPositive) require_positive(p, "gradient bounds (positive regime)");
  auto r = start(std::string("gradient-") + to_string(regime), p, tol);
  r.extra["p"] = std::isinf(pnorm) ? nlohmann::json("inf") : nlohmann::json(pnorm);
  const Eigen::MatrixXd c = h.coefficients_batch(stack(fs, g.size()));
  for (double t : times) {
    const double bound = gradient_bound(p, t, pnorm, regime);
    const Eigen::MatrixXd u = h.synthesize_batch(c, t);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const double lhs = g.norm(grad_norm(g, u.col(static_cast<Eigen::Index>(j))), pnorm);
      r.record(lhs, bound * g.norm(fs[j].values, pnorm), fs[j].id, t, -1);
    }
  }
  return r;
}

InequalityReport check_reverse_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                        const CDParams& p, const std::vector<TestFunction>& fs,
                                        const std::vector<double>& times, double tol) {
  p.validate();
  require_positive(p, "reverse-poincare");
  auto r = start("reverse-poincare", p, tol);
  const Eigen::MatrixXd f = stack(fs, g.size());
  const Eigen::MatrixXd c = h.coefficients_batch(f);
  const Eigen::MatrixXd c2 = h.coefficients_batch(Eigen::MatrixXd(f.array().square()));
  double min_variance = kInf;
  for (double t : times) {
    const double gam = reverse_poincare_gamma(p, t);
    const Eigen::MatrixXd u = h.synthesize_batch(c, t);
    const Eigen::MatrixXd u2 = h.synthesize_batch(c2, t);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const Vector lhs = g.gamma(u.col(jj));
      const Vector var = u2.col(jj) - u.col(jj).cwiseAbs2();
      min_variance = std::min(min_variance, var.minCoeff());
      for (Eigen::Index x = 0; x < lhs.size(); ++x) r.record(lhs[x], gam * var[x], fs[j].id, t, x);
    }
  }
  r.extra["min_variance"] = min_variance;
  return r;
}

InequalityReport check_pseudo_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                       const CDParams& p, Regime regime,
                                       const std::vector<TestFunction>& fs,
                                       const std::vector<double>& times, double pnorm,
                                       bool dual_exponent, double tol) {
  p.validate();
  if (regime == Regime::kPositive) require_positive(p, "pseudo-poincare (positive regime)");
  auto r = start(std::string("pseudo-poincare-") + to_string(regime), p, tol);
  r.extra["p"] = std::isinf(pnorm) ? nlohmann::json("inf") : nlohmann::json(pnorm);
  r.extra["dual_exponent"] = dual_exponent;
  const Eigen::MatrixXd f = stack(fs, g.size());
  const Eigen::MatrixXd c = h.coefficients_batch(f);
  std::vector<double> grad(fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) grad[j] = g.norm(grad_norm(g, fs[j].values), pnorm);
  for (double t : times) {
    const double bound = pseudo_poincare_bound(p, t, pnorm, regime, dual_exponent);
    const Eigen::MatrixXd u = h.synthesize_batch(c, t);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double lhs = g.norm(f.col(jj) - u.col(jj), pnorm);
      r.record(lhs, bound * grad[j], fs[j].id, t, -1);
    }
  }
  return r;
}

InequalityReport check_pseudo_poincare_spectral(const HeatOperator& h, const CDParams& p,
                                                const std::vector<double>& times) {
  p.validate();
  auto r = start("pseudo-poincare-spectral", p, 0.0);
  const double c = 2.0 + 4.0 * p.kappa / p.rho2;
  const auto& ev = h.eigenvalues();
  for (double t : times) {
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      const double l = std::min(ev[k], 0.0);
      r.record(-std::expm1(l * t), std::sqrt(c * t) * std::sqrt(-l), "eigen-" + std::to_string(k), t, k);
    }
  }
  return r;
}

InequalityReport check_gradient_spectral(const HeatOperator& h, const CDParams& p,
                                         const std::vector<double>& times) {
  p.validate();
  auto r = start("gradient-spectral", p, 0.0);
  const double c = 1.0 + 2.0 * p.kappa / p.rho2;
  const auto& ev = h.eigenvalues();
  for (double t : times) {
    if (!(t > 0.0)) throw std::invalid_argument("time must be > 0");
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      const double l = std::min(ev[k], 0.0);
      r.record(-l * std::exp(2.0 * l * t), c / (2.0 * t), "eigen-" + std::to_string(k), t, k);
    }
  }
  return r;
}

InequalityReport check_poincare(const DiscreteGenerator& g, const HeatOperator& h,
                                const CDParams& p, const std::vector<TestFunction>& fs,
                                double pnorm, double tol) {
  p.validate();
  require_positive(p, "poincare");
  auto r = start("poincare", p, tol);
  r.extra["p"] = pnorm;
  const double cp = poincare_constant(p, pnorm);
  r.extra["constant"] = cp;
  for (const auto& f : fs) {
    Vector centred = f.values.array() - g.mean(f.values);
    r.record(g.norm(centred, pnorm), cp * g.norm(grad_norm(g, f.values), pnorm), f.id, 0.0, -1);
  }
  if (pnorm == 2.0 && h.modes() > 1) {
    const double lambda1 = h.spectrum(2)[1];
    const double bound = 1.0 / (cp * cp);
    r.record(bound, lambda1, "spectral-gap", 0.0, -1);
    r.extra["lambda1"] = lambda1;
    r.extra["lambda1_bound"] = bound;
  }
  return r;
}

InequalityReport check_lichnerowicz(const HeatOperator& h, const CDParams& p, double tol) {
  p.validate();
  require_positive(p, "lichnerowicz");
  auto r = start("lichnerowicz", p, tol);
  if (h.modes() < 2) throw std::invalid_argument("Lichnerowicz check needs two eigenvalues");
  const double lambda1 = h.spectrum(2)[1];
  const double bound = lichnerowicz_bound(p);
  r.record(bound, lambda1, "spectral-gap", 0.0, -1);
  r.extra["lambda1"] = lambda1;
  r.extra["bound"] = bound;
  r.extra["margin"] = lambda1 - bound;
  return r;
}

InequalityReport check_cheeger(const CDParams& p, const std::vector<CandidateMeasure>& sets,
                               double tol) {
  p.validate();
  require_positive(p, "cheeger");
  auto r = start("cheeger", p, tol);
  const double iota = cheeger_bound(p);
  const double k = cheeger_product_constant(p);
  r.extra["bound"] = iota;
  double best = kInf;
  for (const auto& e : sets) {
    if (!(e.measure >= 0.0 && e.measure <= 1.0 + 1e-12)) {
      throw std::invalid_argument("candidate measure must be normalized (" + e.id + ")");
    }
    r.record(e.measure * (1.0 - e.measure), k * e.perimeter, e.id + "/product", 0.0, -1);
    if (e.measure > 0.0 && e.measure <= 0.5) {
      const double ratio = e.perimeter / e.measure;
      best = std::min(best, ratio);
      r.record(iota, ratio, e.id, 0.0, -1);
    }
  }
  r.extra["min_ratio"] = std::isfinite(best) ? nlohmann::json(best) : nlohmann::json("inf");
  return r;
}

InequalityReport check_ultracontractivity(const HeatOperator& h, const CDParams& p,
                                          const std::vector<double>& times, double tol) {
  p.validate();
  require_positive(p, "ultracontractive");
  auto r = start("ultracontractive", p, tol);
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> logt, logd;
  for (double t : sorted) {
    const Vector diag = h.kernel_diag(t);
    Eigen::Index at = 0;
    const double top = diag.maxCoeff(&at);
    r.record(top, ultracontractive_bound(p, t), "diagonal", t, at);
    logt.push_back(std::log(t));
    logd.push_back(std::log(top));
  }
  if (logt.size() >= 3) {
    // Least-squares slope over the three smallest times.
    double mt = 0, md = 0;
    for (int i = 0; i < 3; ++i) mt += logt[i] / 3, md += logd[i] / 3;
    double num = 0, den = 0;
    for (int i = 0; i < 3; ++i) {
      num += (logt[i] - mt) * (logd[i] - md);
      den += (logt[i] - mt) * (logt[i] - mt);
    }
    r.extra["diag_slope"] = num / den;
  }
  r.extra["bound_exponent"] = -ultracontractive_exponent(p);
  return r;
}

}  // namespace cdcalc::inequality
