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

#include "cdcalc/geometry/candidate.h"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cdcalc/geometry/ball_volume.h"

namespace cdcalc::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Surface-of-revolution patch from a meridian (r(u), z(u)); the azimuth runs
// clockwise so that d_u Psi x d_v Psi points outward for a meridian going up.
BoundaryPatch revolution(std::function<std::pair<double, double>(double)> meridian, double u0,
                         double u1) {
  BoundaryPatch p;
  p.map = [meridian](double u, double w) {
    auto [r, z] = meridian(u);
    return Point{r * std::cos(w), -r * std::sin(w), z};
  };
  p.u0 = u0;
  p.u1 = u1;
  p.v0 = 0.0;
  p.v1 = 2.0 * kPi;
  p.periodic_v = true;
  return p;
}

// Face of an axis-aligned box: the coordinate `axis` is fixed at `at`; the
// other two run over their ranges in an order giving normal sign * e_axis.
BoundaryPatch face(int axis, double at, int sign, const Vec3& half) {
  int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  if (sign < 0) std::swap(a1, a2);
  BoundaryPatch p;
  p.map = [=](double u, double v) {
    Point q{};
    q[axis] = at;
    q[a1] = u;
    q[a2] = v;
    return q;
  };
  p.u0 = -half[a1];
  p.u1 = half[a1];
  p.v0 = -half[a2];
  p.v1 = half[a2];
  return p;
}

// Composite 10-point Gauss nodes on [a, b] with m panels.
std::vector<std::pair<double, double>> gauss_nodes(double a, double b, int m) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  std::vector<std::pair<double, double>> out;
  const double w = (b - a) / m;
  for (int k = 0; k < m; ++k) {
    const double mid = a + (k + 0.5) * w, half = 0.5 * w;
    for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
      out.emplace_back(mid + half * Rule::abscissa()[i], Rule::weights()[i] * half);
      out.emplace_back(mid - half * Rule::abscissa()[i], Rule::weights()[i] * half);
    }
  }
  return out;
}

std::vector<std::pair<double, double>> trapezoid_nodes(double a, double b, int n) {
  std::vector<std::pair<double, double>> out;
  const double h = (b - a) / n;
  for (int k = 0; k < n; ++k) out.emplace_back(a + k * h, h);
  return out;
}

// Integral over every patch of F(point, d_u Psi x d_v Psi) at a resolution of
// `panels` Gauss panels per direction.
double surface_integral(const CandidateSet& e, int panels,
                        const std::function<double(const Point&, const Vec3&)>& fn) {
  double total = 0.0;
  for (const auto& p : e.patches) {
    const auto us = gauss_nodes(p.u0, p.u1, panels);
    const auto vs = p.periodic_v ? trapezoid_nodes(p.v0, p.v1, 20 * panels)
                                 : gauss_nodes(p.v0, p.v1, panels);
    const double hu = 1e-6 * (p.u1 - p.u0), hv = 1e-6 * (p.v1 - p.v0);
    for (const auto& [u, wu] : us) {
      for (const auto& [v, wv] : vs) {
        const Point x = p.map(u, v);
        const Point up = p.map(u + hu, v), um = p.map(u - hu, v);
        const Point vp = p.map(u, v + hv), vm = p.map(u, v - hv);
        Vec3 du, dv;
        for (int i = 0; i < 3; ++i) {
          du[i] = (up[i] - um[i]) / (2.0 * hu);
          dv[i] = (vp[i] - vm[i]) / (2.0 * hv);
        }
        total += wu * wv * fn(x, cross(du, dv));
      }
    }
  }
  return total;
}

double horizontal_length(const Point& x, const Vec3& n) {
  const double nx = n[0] - 0.5 * x[1] * n[2];
  const double ny = n[1] + 0.5 * x[0] * n[2];
  return std::hypot(nx, ny);
}

Quadrature converged(const CandidateSet& e, const PerimeterOptions& opts,
                     const std::function<double(const Point&, const Vec3&)>& fn,
                     const char* what) {
  const int coarse_panels = std::max(1, opts.resolution / 10);
  Quadrature q;
  q.coarse = surface_integral(e, coarse_panels, fn);
  q.value = surface_integral(e, 2 * coarse_panels, fn);
  q.rel_change = std::abs(q.value - q.coarse) / std::max(std::abs(q.value), 1e-300);
  if (q.rel_change > opts.rel_tol) {
    std::ostringstream os;
    os << what << " quadrature for " << e.id() << " did not converge (relative change "
       << q.rel_change << ")";
    throw NonConvergentQuadrature(os.str());
  }
  return q;
}

}  // namespace

const char* to_string(SetKind k) {
  switch (k) {
    case SetKind::kGaugeBall: return "gauge-ball";
    case SetKind::kBox: return "box";
    case SetKind::kTube: return "tube";
    case SetKind::kCustom: return "custom";
  }
  return "?";
}

std::string CandidateSet::id() const {
  std::ostringstream os;
  os << to_string(kind);
  for (double p : params) os << ":" << p;
  return os.str();
}

CandidateSet gauge_ball(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("gauge ball radius must be > 0");
  CandidateSet e;
  e.kind = SetKind::kGaugeBall;
  e.params = {radius};
  e.level = [radius](const Point& p) { return koranyi_gauge(p) / radius - 1.0; };
  // r^2 = R^2 cos b, 4z = R^2 sin b, b = (pi/2) s (3 - s^2)/2 so that the
  // poles s = +-1 are smooth.
  e.patches.push_back(revolution(
      [radius](double s) {
        const double b = 0.25 * kPi * s * (3.0 - s * s);
        return std::pair{radius * std::sqrt(std::max(std::cos(b), 0.0)),
                         0.25 * radius * radius * std::sin(b)};
      },
      -1.0, 1.0));
  e.extent = std::max(radius, 0.25 * radius * radius) * 1.01;
  return e;
}

CandidateSet box(double a, double c) {
  if (!(a > 0.0 && c > 0.0)) throw std::invalid_argument("box sides must be > 0");
  CandidateSet e;
  e.kind = SetKind::kBox;
  e.params = {a, c};
  e.level = [a, c](const Point& p) {
    return std::max({std::abs(p[0]) / a, std::abs(p[1]) / a, std::abs(p[2]) / c}) - 1.0;
  };
  const Vec3 half{a, a, c};
  for (int axis = 0; axis < 3; ++axis) {
    e.patches.push_back(face(axis, half[axis], +1, half));
    e.patches.push_back(face(axis, -half[axis], -1, half));
  }
  e.extent = std::sqrt(2.0 * a * a + c * c) * 1.01;
  return e;
}

CandidateSet tube(double a, double h) {
  if (!(a > 0.0 && h > 0.0)) throw std::invalid_argument("tube radius and height must be > 0");
  CandidateSet e;
  e.kind = SetKind::kTube;
  e.params = {a, h};
  e.level = [a, h](const Point& p) {
    return std::max(std::hypot(p[0], p[1]) / a, std::abs(p[2]) / h) - 1.0;
  };
  // Bottom cap (inward to outward), wall, top cap, as one meridian each.
  e.patches.push_back(revolution([a, h](double u) { return std::pair{a * u, -h}; }, 0.0, 1.0));
  e.patches.push_back(revolution([a](double u) { return std::pair{a, u}; }, -h, h));
  e.patches.push_back(revolution([a, h](double u) { return std::pair{a * (1.0 - u), h}; }, 0.0, 1.0));
  e.extent = std::hypot(a, h) * 1.01;
  return e;
}

CandidateSet custom_radial(std::function<double(double, double)> radius, double extent,
                           std::vector<double> params) {
  CandidateSet e;
  e.kind = SetKind::kCustom;
  e.params = std::move(params);
  e.level = [radius](const Point& p) {
    const double rho = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (rho == 0.0) return -1.0;
    const double theta = std::acos(std::clamp(p[2] / rho, -1.0, 1.0));
    const double omega = std::atan2(p[1], p[0]);
    return rho / radius(theta, omega) - 1.0;
  };
  BoundaryPatch patch;
  patch.map = [radius](double theta, double omega) {
    const double r = radius(theta, omega);
    return Point{r * std::sin(theta) * std::cos(omega), r * std::sin(theta) * std::sin(omega),
                 r * std::cos(theta)};
  };
  patch.u0 = 0.0;
  patch.u1 = kPi;
  patch.v0 = -kPi;
  patch.v1 = kPi;
  patch.periodic_v = true;
  e.patches.push_back(std::move(patch));
  e.extent = extent;
  return e;
}

CandidateSet dilate(const CandidateSet& e, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be > 0");
  switch (e.kind) {
    case SetKind::kGaugeBall: return gauge_ball(lambda * e.params[0]);
    case SetKind::kBox: return box(lambda * e.params[0], lambda * lambda * e.params[1]);
    case SetKind::kTube: return tube(lambda * e.params[0], lambda * lambda * e.params[1]);
    case SetKind::kCustom: break;
  }
  CandidateSet out = e;
  auto level = e.level;
  out.level = [level, lambda](const Point& p) { return level(geometry::dilate(p, 1.0 / lambda)); };
  for (auto& patch : out.patches) {
    auto map = patch.map;
    patch.map = [map, lambda](double u, double v) { return geometry::dilate(map(u, v), lambda); };
  }
  out.extent = e.extent * std::max(lambda, lambda * lambda);
  out.params.push_back(lambda);
  return out;
}

Quadrature horizontal_perimeter(const CandidateSet& e, const PerimeterOptions& opts) {
  return converged(e, opts, horizontal_length, "perimeter");
}

Quadrature enclosed_volume(const CandidateSet& e, const PerimeterOptions& opts) {
  return converged(
      e, opts, [](const Point& x, const Vec3& n) { return dot({x[0], x[1], x[2]}, n) / 3.0; },
      "volume");
}

double monte_carlo_volume(const CandidateSet& e, std::size_t samples, std::uint64_t seed) {
  const double r = e.extent;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point p{r * (2.0 * counter_uniform(seed, i, 0) - 1.0),
                  r * (2.0 * counter_uniform(seed, i, 1) - 1.0),
                  r * (2.0 * counter_uniform(seed, i, 2) - 1.0)};
    hits += e.contains(p) ? 1 : 0;
  }
  return 8.0 * r * r * r * static_cast<double>(hits) / static_cast<double>(samples);
}

double mollified_perimeter(const CandidateSet& e, double eps, int angular) {
  if (!(eps > 0.0)) throw std::invalid_argument("mollification width must be > 0");
  // S'(s) = (35/32)(1 - s^2)^3 on [-1, 1]: even, unit mass.
  auto bump = [](double s) {
    const double q = 1.0 - s * s;
    return q > 0.0 ? 35.0 / 32.0 * q * q * q : 0.0;
  };
  const double h = 1e-7 * e.extent;
  auto sqrt_gamma = [&](const Point& p) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Point a = p, b = p;
      a[i] += h;
      b[i] -= h;
      g[i] = (e.level(a) - e.level(b)) / (2.0 * h);
    }
    return horizontal_length(p, g);
  };
  const auto thetas = gauss_nodes(0.0, kPi, std::max(1, angular / 20) * 2);
  const auto omegas = trapezoid_nodes(-kPi, kPi, 2 * angular);
  double total = 0.0;
  for (const auto& [theta, wt] : thetas) {
    for (const auto& [omega, wo] : omegas) {
      const Vec3 dir{std::sin(theta) * std::cos(omega), std::sin(theta) * std::sin(omega),
                     std::cos(theta)};
      auto at = [&](double rho) { return Point{rho * dir[0], rho * dir[1], rho * dir[2]}; };
      // Level along the ray is increasing; find where it crosses -eps and +eps.
      auto crossing = [&](double target) {
        double lo = 0.0, hi = e.extent;
        while (e.level(at(hi)) < target) hi *= 2.0;
        for (int it = 0; it < 50; ++it) {
          const double mid = 0.5 * (lo + hi);
          (e.level(at(mid)) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
      };
      const double r0 = crossing(-eps), r1 = crossing(eps);
      auto radial = [&](double rho) {
        const Point p = at(rho);
        return rho * rho * bump(e.level(p) / eps) / eps * sqrt_gamma(p);
      };
      // The bump is a polynomial in the level, which is smooth along the ray.
      const double line = boost::math::quadrature::gauss<double, 20>::integrate(radial, r0, r1);
      total += wt * wo * std::sin(theta) * line;
    }
  }
  return total;
}

inequality::InequalityReport check_isoperimetric(const std::vector<CandidateSet>& sets,
                                                 const std::vector<double>& lambdas,
                                                 double homogeneous_dim, double tol,
                                                 std::size_t mc_samples, std::uint64_t seed) {
  inequality::InequalityReport r;
  r.name = "isoperimetric";
  r.tolerance = tol;
  r.seed = seed;
  r.extra["D"] = homogeneous_dim;
  r.extra["mc_samples"] = mc_samples;
  nlohmann::json rows = nlohmann::json::array();
  double max_ratio = 0.0, max_mc_gap = 0.0;
  const double expo = (homogeneous_dim - 1.0) / homogeneous_dim;
  std::uint64_t stream = seed;
  struct Ratios {
    double surface, monte_carlo;
  };
  // The surface rule is exactly covariant under dilation, so each set also
  // gets a Monte Carlo volume on its own sample stream.
  auto ratio_of = [&](const CandidateSet& e) {
    const double v = enclosed_volume(e).value;
    const double p = horizontal_perimeter(e).value;
    const double mc = mc_samples ? monte_carlo_volume(e, mc_samples, stream++) : v;
    const double ratio = p > 0.0 ? std::pow(v, expo) / p : 0.0;
    const double ratio_mc = p > 0.0 ? std::pow(mc, expo) / p : 0.0;
    rows.push_back({{"set", e.id()}, {"volume", v}, {"volume_mc", mc}, {"perimeter", p}, {"ratio", ratio},
                    {"ratio_mc", ratio_mc}});
    max_ratio = std::max(max_ratio, ratio);
    if (v > 0.0) max_mc_gap = std::max(max_mc_gap, std::abs(mc / v - 1.0));
    return Ratios{ratio, ratio_mc};
  };
  for (const auto& base : sets) {
    const auto r1 = ratio_of(base);
    for (double lambda : lambdas) {
      if (lambda == 1.0) continue;
      const auto rl = ratio_of(dilate(base, lambda));
      const std::string id = base.id() + "@" + std::to_string(lambda);
      r.record(std::abs(rl.surface / r1.surface - 1.0), 0.0, id, lambda, -1);
      if (mc_samples) r.record(std::abs(rl.monte_carlo / r1.surface - 1.0), 0.0, id + ":mc", lambda, -1);
    }
  }
  if (r.witnesses == 0) r.max_violation = 0.0;
  r.extra["ratios"] = rows;
  r.extra["max_ratio"] = max_ratio;
  r.extra["max_mc_volume_gap"] = max_mc_gap;
  return r;
}

}  // namespace cdcalc::geometry
