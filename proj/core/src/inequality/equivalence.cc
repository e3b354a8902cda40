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

#include "cdcalc/inequality/equivalence.h"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdcalc/geometry/ball_volume.h"
#include "cdcalc/geometry/candidate.h"
#include "cdcalc/semigroup/heisenberg_kernel.h"

namespace cdcalc::inequality {

namespace {

// Geometric panels on [0, 64], ratio 1.3, twenty Gauss points each. Fixed for
// every lambda so the dilated integrands are not resampled on a moving grid.
const std::vector<std::pair<double, double>>& nodes() {
  static const auto out = [] {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    std::vector<std::pair<double, double>> v;
    auto panel = [&](double lo, double hi) {
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
        v.emplace_back(mid + half * Rule::abscissa()[i], Rule::weights()[i] * half);
        v.emplace_back(mid - half * Rule::abscissa()[i], Rule::weights()[i] * half);
      }
    };
    panel(0.0, 1e-4);
    for (double lo = 1e-4; lo < 64.0; lo *= 1.3) panel(lo, 1.3 * lo);
    return v;
  }();
  return out;
}

struct NashNorms {
  double f_q = 0.0, f_r = 0.0, grad_p = 0.0;
};

// f = g(s), s = lambda^4 (r^4 + 16 z^2), g = (1-s)^k. Gamma(s) = 16 lambda^4 r^2 s
// from Gamma = d_r^2 + (r^2/4) d_z^2 on functions of (r, z).
NashNorms nash_norms(int k, double lambda, double p, double q, double r) {
  const double l4 = std::pow(lambda, 4);
  NashNorms n;
  for (const auto& [rr, wr] : nodes()) {
    const double r4 = std::pow(rr, 4);
    if (l4 * r4 >= 1.0) continue;
    for (const auto& [z, wz] : nodes()) {
      const double s = l4 * (r4 + 16.0 * z * z);
      if (s >= 1.0) continue;
      const double g = std::pow(1.0 - s, k);
      const double dg = k * std::pow(1.0 - s, k - 1);
      const double grad = dg * 4.0 * std::sqrt(l4) * rr * std::sqrt(s);
      const double w = 2.0 * 2.0 * std::numbers::pi * rr * wr * wz;  // z >= 0 half, revolution
      n.f_q += w * std::pow(g, q);
      n.f_r += w * std::pow(g, r);
      n.grad_p += w * std::pow(grad, p);
    }
  }
  n.f_q = std::pow(n.f_q, 1.0 / q);
  n.f_r = std::pow(n.f_r, 1.0 / r);
  n.grad_p = std::pow(n.grad_p, 1.0 / p);
  return n;
}

}  // namespace

void require_nash_exponents(double p, double q, double r, double dim) {
  if (!(p >= 1.0 && q > 0.0 && r > 0.0 && dim > 0.0) ||
      std::abs(1.0 / q - (1.0 / p - r / (q * dim))) > 1e-12) {
    throw std::invalid_argument("exponents must satisfy 1/q = 1/p - r/(qD)");
  }
}

double nash_ratio(int power, double lambda, double p, double q, double r) {
  const auto n = nash_norms(power, lambda, p, q, r);
  return n.f_q / (std::pow(n.grad_p, p / q) * std::pow(n.f_r, 1.0 - p / q));
}

InequalityReport check_equivalence_chain(const EquivalenceOptions& o) {
  require_nash_exponents(o.pnorm, o.qnorm, o.rnorm, o.homogeneous_dim);
  const double dim = o.homogeneous_dim;
  InequalityReport rep;
  rep.name = "equivalence";
  rep.tolerance = 0.0;  // each item carries its own tolerance as the rhs
  rep.seed = o.seed;

  // (1) volume growth
  if (o.volumes) {
    geometry::VolumeOptions vo;
    vo.samples = o.samples;
    vo.seed = o.seed;
    const auto fit = geometry::volume_growth(o.radii, vo);
    double mean = 0.0;
    for (const auto& v : fit.points) mean += v.value / std::pow(v.r, dim);
    mean /= static_cast<double>(fit.points.size());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& v : fit.points) {
      const double c = v.value / std::pow(v.r, dim);
      rep.record(std::abs(c / mean - 1.0), o.volume_tol, "volume-r" + std::to_string(v.r), v.r, -1);
      rows.push_back({{"r", v.r}, {"volume", v.value}, {"stderr", v.stderr_}, {"scaled", c}, {"retried", v.retried}});
    }
    rep.record(std::abs(fit.slope - dim), o.slope_tol, "volume-slope", 0.0, -1);
    rep.extra["volume"] = {{"slope", fit.slope}, {"rows", rows}, {"samples", o.samples}};
  } else {
    rep.notes.push_back("ball volumes skipped");
  }

  // (2) kernel diagonal t^{D/2} p_t(0,0)
  {
    double mean = 0.0;
    std::vector<double> scaled;
    for (double t : o.times) {
      scaled.push_back(std::pow(t, dim / 2.0) * semigroup::heisenberg_heat_kernel(t, 0.0, 0.0));
      mean += scaled.back();
    }
    mean /= static_cast<double>(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      rep.record(std::abs(scaled[i] / mean - 1.0), o.kernel_tol, "kernel-diag", o.times[i], -1);
    }
    rep.extra["kernel"] = {{"times", o.times}, {"scaled", scaled}, {"mean", mean}};
  }

  // (3) Nash-type ratio under dilation
  {
    nlohmann::json rows = nlohmann::json::array();
    for (int k : o.powers) {
      const double base = nash_ratio(k, 1.0, o.pnorm, o.qnorm, o.rnorm);
      for (double lambda : o.lambdas) {
        const double rl = nash_ratio(k, lambda, o.pnorm, o.qnorm, o.rnorm);
        rep.record(std::abs(rl / base - 1.0), o.nash_tol, "nash-k" + std::to_string(k), lambda, -1);
        rows.push_back({{"power", k}, {"lambda", lambda}, {"ratio", rl}, {"base", base}});
      }
    }
    rep.extra["nash"] = {{"p", o.pnorm}, {"q", o.qnorm}, {"r", o.rnorm}, {"rows", rows}};
  }

  // (4) isoperimetry on gauge balls, boxes and tubes
  {
    const auto iso = geometry::check_isoperimetric(
        {geometry::gauge_ball(1.0), geometry::box(0.6, 0.3), geometry::tube(0.7, 0.4)}, o.lambdas,
        dim, o.iso_tol, 1'000'000, o.seed);
    rep.record(iso.max_violation, o.iso_tol, "isoperimetric:" + iso.worst.function_id,
               iso.worst.t, -1);
    rep.extra["isoperimetric"] = iso.extra;
  }
  return rep;
}

}  // namespace cdcalc::inequality
