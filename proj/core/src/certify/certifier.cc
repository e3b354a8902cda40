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

#include "cdcalc/certify/certifier.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cdcalc::certify {

std::size_t CertificateReport::violations() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.psd ? 0 : 1;
  return n;
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json j;
  j["params"] = {{"rho1", params.rho1}, {"rho2", params.rho2}, {"kappa", params.kappa}, {"d", params.d}};
  j["grid"] = {{"points", points}, {"nus", nus}, {"tolerance", tolerance}};
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) {
    j["cells"].push_back({{"point", c.point}, {"nu", c.nu}, {"min_eig", c.min_eig}, {"psd", c.psd}});
  }
  j["verdict"] = certified ? "certified at samples" : "violated";
  return j;
}

std::vector<std::vector<double>> sample_points(const models::ModelCatalogEntry& e,
                                               const SamplingOptions& opts) {
  const int n = e.model.chart_dim();
  std::vector<std::vector<double>> raw;
  if (opts.grid_per_axis > 0) {
    std::vector<int> idx(n, 0);
    const int g = opts.grid_per_axis;
    while (true) {
      std::vector<double> p(n);
      for (int i = 0; i < n; ++i) {
        p[i] = g == 1 ? 0.0 : -opts.box + 2.0 * opts.box * idx[i] / (g - 1);
      }
      raw.push_back(std::move(p));
      int k = 0;
      while (k < n && ++idx[k] == g) idx[k++] = 0;
      if (k == n) break;
    }
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(-opts.box, opts.box);
  for (int r = 0; r < opts.random_points; ++r) {
    std::vector<double> p(n);
    for (auto& v : p) v = u(rng);
    raw.push_back(std::move(p));
  }
  if (e.point_domain == models::PointDomain::kEuclidean) return raw;
  std::vector<std::vector<double>> out;
  for (auto& p : raw) {
    double norm = 0.0;
    for (double v : p) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    for (auto& v : p) v /= norm;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> nu_grid(int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("empty nu grid");
  std::vector<double> nus;
  for (int k = k_min; k <= k_max; ++k) nus.push_back(std::ldexp(1.0, k));
  return nus;
}

Certifier::Certifier(const SubRiemannianModel& model, std::vector<std::vector<double>> points,
                     std::vector<double> nus)
    : assembler_(model), points_(std::move(points)), nus_(std::move(nus)) {
  if (points_.empty() || nus_.empty()) throw std::invalid_argument("certifier grids must be nonempty");
  for (double nu : nus_) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu grid entries must be positive");
  }
  terms_.reserve(points_.size());
  for (const auto& p : points_) terms_.push_back(assembler_.terms_at(p));
}

CertificateReport Certifier::verify(const CDParams& p, double tol) const {
  p.validate();
  CertificateReport report;
  report.params = p;
  report.points = points_;
  report.nus = nus_;
  report.tolerance = tol;
  report.certified = true;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t k = 0; k < nus_.size(); ++k) {
      PsdResult r = psd_test(terms_[i].combine(p, nus_[k]), tol);
      CertificateCell cell{i, k, points_[i], nus_[k], r.min_eig, r.psd, {}};
      if (!r.psd) {
        cell.witness.assign(r.min_eigvec.data(), r.min_eigvec.data() + r.min_eigvec.size());
        report.certified = false;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

bool Certifier::passes(const CDParams& p, double tol) const {
  p.validate();
  for (const auto& t : terms_) {
    for (double nu : nus_) {
      if (!psd_test(t.combine(p, nu), tol).psd) return false;
    }
  }
  return true;
}

double Certifier::maximize_rho1(double rho2, double kappa, double d, double tol,
                                double width) const {
  CDParams p{0.0, rho2, kappa, d};
  p.validate();
  double lo = -std::ldexp(1.0, 10);
  double hi = std::ldexp(1.0, 10);
  while (!passes(p.with_rho1(lo), tol)) {
    lo *= 2.0;
    if (lo < -std::ldexp(1.0, 40)) {
      throw std::domain_error("no certified rho1 in bracket: model and parameters incompatible");
    }
  }
  while (passes(p.with_rho1(hi), tol)) {
    lo = hi;
    hi *= 2.0;
    if (hi > std::ldexp(1.0, 40)) return lo;
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (passes(p.with_rho1(mid), tol)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

CertificateReport verify_cd(const SubRiemannianModel& m, const CDParams& p,
                            const std::vector<std::vector<double>>& points,
                            const std::vector<double>& nus, double tol) {
  return Certifier(m, points, nus).verify(p, tol);
}

double maximize_rho1(const SubRiemannianModel& m, double rho2, double kappa, double d,
                     const std::vector<std::vector<double>>& points,
                     const std::vector<double>& nus, double tol) {
  return Certifier(m, points, nus).maximize_rho1(rho2, kappa, d, tol);
}

ScalarField witness_polynomial(const CertificateCell& cell, const std::vector<Exponent>& basis) {
  if (cell.witness.size() != basis.size()) {
    throw std::invalid_argument("witness length does not match jet basis");
  }
  std::vector<Rational> x(cell.point.begin(), cell.point.end());
  std::vector<Rational> c(cell.witness.begin(), cell.witness.end());
  return jet_polynomial(c, x, basis);
}

}  // namespace cdcalc::certify
