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

#include "cdcalc/geometry/heisenberg.h"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cdcalc::geometry {

Point multiply(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + 0.5 * (a[0] * b[1] - a[1] * b[0])};
}

Point inverse(const Point& a) { return {-a[0], -a[1], -a[2]}; }

Point dilate(const Point& a, double lambda) {
  return {lambda * a[0], lambda * a[1], lambda * lambda * a[2]};
}

double koranyi_gauge(const Point& p) {
  const double r2 = p[0] * p[0] + p[1] * p[1];
  return std::pow(r2 * r2 + 16.0 * p[2] * p[2], 0.25);
}

double cc_lower_bound(const Point& x, const Point& y) {
  const Point g = multiply(inverse(x), y);
  return std::max(std::hypot(g[0], g[1]), koranyi_gauge(g));
}

Point integrate_controls(const std::vector<double>& u) {
  const std::size_t k = u.size() / 2;
  const double dt = 1.0 / static_cast<double>(k);
  Point p{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    const double a = u[2 * i], b = u[2 * i + 1];
    // Exact over a straight segment: dz = (x b - y a) dt / 2.
    p[2] += 0.5 * (p[0] * b - p[1] * a) * dt;
    p[0] += a * dt;
    p[1] += b * dt;
  }
  return p;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// z(u) = u^T Q u / 2 for piecewise-constant controls of duration 1/K.
MatrixXd area_form(int k) {
  const int n = 2 * k;
  MatrixXd q = MatrixXd::Zero(n, n);
  const double c = 1.0 / (2.0 * k * k);
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      q(2 * j, 2 * l + 1) = q(2 * l + 1, 2 * j) = c;
      q(2 * j + 1, 2 * l) = q(2 * l, 2 * j + 1) = -c;
    }
  }
  return q;
}

struct Solve {
  VectorXd u;
  double residual;
  bool ok;
};

// Newton on F(u, mu) = [u/K - J^T mu; c(u) - target].
Solve newton_kkt(const MatrixXd& q, const Point& target, VectorXd u, double tol) {
  const int n = static_cast<int>(u.size());
  const int k = n / 2;
  VectorXd mu = VectorXd::Zero(3);
  auto constraint = [&](const VectorXd& v) {
    Eigen::Vector3d c;
    c[0] = 0.0;
    c[1] = 0.0;
    for (int i = 0; i < k; ++i) c[0] += v[2 * i], c[1] += v[2 * i + 1];
    c[0] /= k;
    c[1] /= k;
    c[2] = 0.5 * v.dot(q * v);
    return c;
  };
  auto jacobian = [&](const VectorXd& v) {
    MatrixXd j = MatrixXd::Zero(3, n);
    for (int i = 0; i < k; ++i) {
      j(0, 2 * i) = 1.0 / k;
      j(1, 2 * i + 1) = 1.0 / k;
    }
    j.row(2) = (q * v).transpose();
    return j;
  };
  const Eigen::Vector3d y(target[0], target[1], target[2]);
  auto residual = [&](const VectorXd& v, const VectorXd& m) {
    VectorXd f(n + 3);
    f.head(n) = v / k - jacobian(v).transpose() * m;
    f.tail(3) = constraint(v) - y;
    return f;
  };
  VectorXd f = residual(u, mu);
  for (int it = 0; it < 100 && f.norm() > 1e-13; ++it) {
    const MatrixXd j = jacobian(u);
    MatrixXd a = MatrixXd::Zero(n + 3, n + 3);
    a.topLeftCorner(n, n) = MatrixXd::Identity(n, n) / k - mu[2] * q;
    a.topRightCorner(n, 3) = -j.transpose();
    a.bottomLeftCorner(3, n) = j;
    const VectorXd step = a.fullPivLu().solve(-f);
    if (!step.allFinite()) break;
    double s = 1.0;
    const double f0 = f.norm();
    while (s > 1e-4) {
      VectorXd un = u + s * step.head(n);
      VectorXd mn = mu + s * step.tail(3);
      VectorXd fn = residual(un, mn);
      if (fn.norm() < (1.0 - 1e-4 * s) * f0) {
        u = un;
        mu = mn;
        f = fn;
        break;
      }
      s *= 0.5;
    }
    if (s <= 1e-4) break;
  }
  const double endpoint = (constraint(u) - y).norm();
  return {u, endpoint, endpoint <= tol && f.head(n).norm() < 1e-8};
}

}  // namespace

DistanceResult cc_distance(const Point& x, const Point& y, const DistanceOptions& opts) {
  if (opts.segments < 4) throw std::invalid_argument("cc_distance needs K >= 4 segments");
  const Point g = multiply(inverse(x), y);
  DistanceResult out;
  out.lower_bound = cc_lower_bound(x, y);
  const int k = opts.segments;
  if (std::hypot(g[0], g[1]) == 0.0 && g[2] == 0.0) {
    out.controls.assign(2 * k, 0.0);
    return out;
  }
  const MatrixXd q = area_form(k);
  // Scale of the controls: the gauge bounds the distance from below.
  const double scale = std::max(koranyi_gauge(g), 1e-300);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  double best = std::numeric_limits<double>::infinity();
  double best_err = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= opts.starts; ++s) {
    VectorXd u(2 * k);
    for (int i = 0; i < k; ++i) {
      if (s == 0) {
        // Arc-like start: a circle of the right orientation plus the chord.
        const double ang = 2.0 * std::numbers::pi * (i + 0.5) / k;
        const double sign = g[2] >= 0 ? 1.0 : -1.0;
        u[2 * i] = g[0] + scale * std::cos(ang);
        u[2 * i + 1] = g[1] + sign * scale * std::sin(ang);
      } else {
        u[2 * i] = g[0] + scale * normal(rng);
        u[2 * i + 1] = g[1] + scale * normal(rng);
      }
    }
    const Solve r = newton_kkt(q, g, u, opts.endpoint_tol);
    if (!r.ok) {
      best_err = std::min(best_err, r.residual);
      continue;
    }
    ++out.converged_starts;
    double len = 0.0;
    for (int i = 0; i < k; ++i) len += std::hypot(r.u[2 * i], r.u[2 * i + 1]);
    len /= k;
    if (len < best) {
      best = len;
      out.endpoint_error = r.residual;
      out.controls.assign(r.u.data(), r.u.data() + r.u.size());
    }
  }
  if (out.converged_starts == 0) {
    throw EndpointNotReached("cc_distance: no start reached the endpoint (best residual " +
                             std::to_string(best_err) + ")");
  }
  out.value = best;
  return out;
}

}  // namespace cdcalc::geometry
