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

#include "cdcalc/inequality/sobolev.h"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cdcalc/semigroup/heisenberg_kernel.h"

namespace cdcalc::inequality {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed geometric panels shared by every kernel scale: [0, 1e-3] then ratio
// 1.6 up to 2048, ten Gauss points each. The ratio is deliberately not a power
// of 2 so that dyadic dilations do not map the node set onto itself.
std::vector<std::pair<double, double>> radial_nodes() {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  std::vector<std::pair<double, double>> out;
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
      out.emplace_back(mid + half * Rule::abscissa()[i], Rule::weights()[i] * half);
      out.emplace_back(mid - half * Rule::abscissa()[i], Rule::weights()[i] * half);
    }
  };
  panel(0.0, 1e-3);
  for (double lo = 1e-3; lo < 2048.0; lo *= 1.6) panel(lo, 1.6 * lo);
  return out;
}

struct KernelNorms {
  double norm_q;
  double grad_p;
};

// ||p_s||_q and ||sqrt Gamma p_s||_p on R^3 as 4 pi int int r F(r, |z|) dz dr.
// Points where the kernel is below e^{-150} (r^2 > 600 s or |z| > 45 s) are
// skipped.
KernelNorms kernel_norms(double s, double pnorm, double qnorm) {
  static const auto nodes = radial_nodes();
  double iq = 0.0, ip = 0.0;
  for (const auto& [r, wr] : nodes) {
    if (r * r > 600.0 * s) continue;
    for (const auto& [z, wz] : nodes) {
      if (z > 45.0 * s) continue;
      const auto j = semigroup::heisenberg_heat_kernel_jet(s, r, z);
      const double gam = j.dr * j.dr + 0.25 * r * r * j.dz * j.dz;
      iq += wr * wz * r * std::pow(std::abs(j.value), qnorm);
      ip += wr * wz * r * std::pow(gam, 0.5 * pnorm);
    }
  }
  const double c = 4.0 * std::numbers::pi;
  return {std::pow(c * iq, 1.0 / qnorm), std::pow(c * ip, 1.0 / pnorm)};
}

}  // namespace

std::vector<double> default_besov_grid() { return log_grid(1e-3, 1e3, 61); }

BesovNorm besov_norm(const std::function<double(double)>& sup_norm, double alpha,
                     const std::vector<double>& times) {
  if (!(alpha < 0.0)) throw std::invalid_argument("Besov exponent must be negative");
  if (times.size() < 3) throw std::invalid_argument("Besov grid needs at least three times");
  BesovNorm out;
  out.alpha = alpha;
  out.times = times;
  auto weighted = [&](double t) { return std::pow(t, -alpha / 2.0) * sup_norm(t); };
  std::size_t best = 0;
  std::vector<double> vals(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    vals[i] = weighted(times[i]);
    if (vals[i] > vals[best]) best = i;
  }
  out.value = vals[best];
  out.argmax = times[best];
  out.growing_at_start = best == 0;
  out.growing_at_end = best + 1 == times.size();
  if (!out.lower_bound()) {
    auto neg = [&](double logt) { return -weighted(std::exp(logt)); };
    auto [x, fx] = boost::math::tools::brent_find_minima(neg, std::log(times[best - 1]),
                                                         std::log(times[best + 1]), 40);
    if (-fx > out.value) {
      out.value = -fx;
      out.argmax = std::exp(x);
    }
  }
  return out;
}

BesovNorm besov_norm(const DiscreteGenerator& g, const HeatOperator& h, const Vector& f,
                     double alpha, const std::vector<double>& times) {
  const double scale = f.cwiseAbs().maxCoeff();
  if (std::abs(g.mean(f)) > 1e-10 * std::max(scale, 1e-300)) {
    if (!(alpha < 0.0)) throw std::invalid_argument("Besov exponent must be negative");
    BesovNorm out;
    out.alpha = alpha;
    out.value = kInf;
    out.times = times;
    out.growing_at_end = true;
    out.argmax = times.empty() ? 0.0 : times.back();
    return out;
  }
  const Vector c = h.coefficients(f);
  return besov_norm([&](double t) { return h.synthesize(c, t).cwiseAbs().maxCoeff(); }, alpha, times);
}

double sobolev_besov_alpha(double pnorm, double qnorm) {
  if (!(pnorm >= 1.0 && qnorm > pnorm && std::isfinite(qnorm))) {
    throw std::invalid_argument("improved Sobolev needs 1 <= p < q < inf");
  }
  const double theta = pnorm / qnorm;
  return theta / (theta - 1.0);
}

double sobolev_ratio(double norm_q, double grad_p, double besov, double pnorm, double qnorm) {
  sobolev_besov_alpha(pnorm, qnorm);
  const double theta = pnorm / qnorm;
  return norm_q / (std::pow(grad_p, theta) * std::pow(besov, 1.0 - theta));
}

InequalityReport check_improved_sobolev(const DiscreteGenerator& g, const HeatOperator& h,
                                        const CDParams& p, const std::vector<TestFunction>& fs,
                                        double pnorm, double qnorm, double band) {
  const double alpha = sobolev_besov_alpha(pnorm, qnorm);
  InequalityReport r;
  r.name = "improved-sobolev";
  r.params = p;
  r.tolerance = 0.0;
  r.extra["p"] = pnorm;
  r.extra["q"] = qnorm;
  r.extra["alpha"] = alpha;
  std::vector<double> ratios;
  std::size_t vacuous = 0, lower = 0;
  for (const auto& f : fs) {
    const auto b = besov_norm(g, h, f.values, alpha);
    if (!std::isfinite(b.value)) {
      ++vacuous;
      continue;
    }
    if (b.lower_bound()) ++lower;
    const double grad = g.norm(g.gamma(f.values).cwiseSqrt(), pnorm);
    ratios.push_back(sobolev_ratio(g.norm(f.values, qnorm), grad, b.value, pnorm, qnorm));
  }
  r.extra["ratios"] = ratios;
  if (vacuous > 0) r.notes.push_back(std::to_string(vacuous) + " functions with infinite Besov norm (vacuous)");
  if (lower > 0) r.notes.push_back(std::to_string(lower) + " Besov norms are grid lower bounds");
  if (ratios.empty()) {
    r.vacuous = true;
    r.max_violation = 0.0;
    return r;
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  r.extra["min_ratio"] = *lo;
  r.extra["max_ratio"] = *hi;
  r.record(*hi / *lo, band, "band", 0.0, -1);
  r.witnesses = ratios.size();
  return r;
}

double heisenberg_kernel_norm(double s, double qnorm) {
  if (!(s > 0.0) || !(qnorm >= 1.0)) throw std::invalid_argument("bad kernel norm arguments");
  return kernel_norms(s, 1.0, qnorm).norm_q;
}

double heisenberg_kernel_gradient_norm(double s, double pnorm) {
  if (!(s > 0.0) || !(pnorm >= 1.0)) throw std::invalid_argument("bad kernel norm arguments");
  return kernel_norms(s, pnorm, 1.0).grad_p;
}

InequalityReport check_improved_sobolev_dilation(const CDParams& p, double s,
                                                 const std::vector<double>& lambdas,
                                                 double pnorm, double qnorm, double tol) {
  const double alpha = sobolev_besov_alpha(pnorm, qnorm);
  if (-alpha >= 4.0) throw std::invalid_argument("Besov norm of the kernel is infinite for this (p, q)");
  InequalityReport r;
  r.name = "improved-sobolev-dilation";
  r.params = p;
  r.tolerance = tol;
  r.extra["s"] = s;
  auto ratio = [&](double lambda) {
    // p_s o delta_lambda = lambda^{-4} p_{s/lambda^2}.
    const double sl = s / (lambda * lambda);
    const double c = std::pow(lambda, -4.0);
    const auto norms = kernel_norms(sl, pnorm, qnorm);
    const double nq = c * norms.norm_q;
    const double gp = c * norms.grad_p;
    // ||P_t f||_inf is attained at the origin: c p_{sl + t}(0).
    const auto b = besov_norm(
        [&](double t) { return c * semigroup::heisenberg_heat_kernel_origin(sl + t); }, alpha);
    if (b.lower_bound()) r.notes.push_back("Besov grid edge hit at lambda " + std::to_string(lambda));
    return sobolev_ratio(nq, gp, b.value, pnorm, qnorm);
  };
  const double base = ratio(1.0);
  r.extra["base_ratio"] = base;
  nlohmann::json rows = nlohmann::json::array();
  for (double lambda : lambdas) {
    const double rl = ratio(lambda);
    rows.push_back({{"lambda", lambda}, {"ratio", rl}, {"relative", rl / base}});
    r.record(std::abs(rl / base - 1.0), 0.0, "lambda-" + std::to_string(lambda), 0.0, -1);
  }
  r.extra["family"] = rows;
  return r;
}

}  // namespace cdcalc::inequality
