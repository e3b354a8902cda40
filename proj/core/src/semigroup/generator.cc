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

#include "cdcalc/semigroup/generator.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdcalc::semigroup {

namespace {

using Triplet = Eigen::Triplet<double>;

struct Stepper {
  const models::PeriodicLatticeSpec& spec;
  std::vector<std::size_t> strides;

  explicit Stepper(const models::PeriodicLatticeSpec& s) : spec(s) {
    std::size_t stride = 1;
    for (const auto& a : spec.axes) {
      strides.push_back(stride);
      stride *= static_cast<std::size_t>(a.points);
    }
  }

  std::vector<int> unravel(std::size_t index) const {
    std::vector<int> k(spec.axes.size());
    for (std::size_t a = 0; a < k.size(); ++a) {
      k[a] = static_cast<int>(index % spec.axes[a].points);
      index /= spec.axes[a].points;
    }
    return k;
  }

  // Neighbour index along `axis` by `dir` = +-1, or -1 when it falls off a
  // non-periodic end.
  long neighbour(std::size_t index, const std::vector<int>& k, int axis, int dir) const {
    const auto& a = spec.axes[axis];
    int next = k[axis] + dir;
    long shift = 0;
    if (next < 0 || next >= a.points) {
      if (!a.periodic) return -1;
      next = (next + a.points) % a.points;
      if (a.twist_axis >= 0) {
        const auto& b = spec.axes[a.twist_axis];
        const int nodes = static_cast<int>(std::lround(a.twist / b.spacing()));
        int moved = ((k[a.twist_axis] + dir * nodes) % b.points + b.points) % b.points;
        shift = (static_cast<long>(moved) - k[a.twist_axis]) *
                static_cast<long>(strides[a.twist_axis]);
      }
    }
    return static_cast<long>(index) + shift +
           (static_cast<long>(next) - k[axis]) * static_cast<long>(strides[axis]);
  }
};

SparseMatrix weighted_gram(const SparseMatrix& d, const Vector& mass) {
  SparseMatrix md = mass.asDiagonal() * d;
  return SparseMatrix(d.transpose() * md);
}

}  // namespace

DiscreteGenerator::DiscreteGenerator(models::PeriodicLatticeSpec lattice, SparseMatrix stiffness,
                                     Vector mass, double volume,
                                     std::vector<SparseMatrix> forward,
                                     std::vector<SparseMatrix> backward)
    : lattice_(std::move(lattice)),
      stiffness_(std::move(stiffness)),
      mass_(std::move(mass)),
      volume_(volume),
      forward_(std::move(forward)),
      backward_(std::move(backward)) {
  if (stiffness_.rows() != mass_.size() || stiffness_.cols() != mass_.size()) {
    throw std::invalid_argument("stiffness and mass sizes differ");
  }
  if ((mass_.array() <= 0.0).any()) throw std::invalid_argument("mass weights must be positive");
  const double total = mass_.sum();
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mass must be normalized to 1");
  matrix_ = -(mass_.cwiseInverse().asDiagonal() * stiffness_);
  matrix_.makeCompressed();
}

DiscreteGenerator DiscreteGenerator::from_stiffness(SparseMatrix stiffness, Vector mass) {
  const double total = mass.sum();
  mass /= total;
  models::PeriodicLatticeSpec spec;
  spec.model = "graph";
  spec.axes = {{0.0, 1.0, static_cast<int>(mass.size()), false}};
  spec.max_points = static_cast<std::size_t>(mass.size());
  return DiscreteGenerator(std::move(spec), std::move(stiffness), std::move(mass), total, {}, {});
}

Vector DiscreteGenerator::gamma(const Vector& f) const { return gamma(f, f); }

Vector DiscreteGenerator::gamma(const Vector& f, const Vector& g) const {
  Vector out = Vector::Zero(f.size());
  for (std::size_t i = 0; i < forward_.size(); ++i) {
    Vector fp = forward_[i] * f, gp = forward_[i] * g;
    Vector fm = backward_[i] * f, gm = backward_[i] * g;
    out.array() += 0.5 * (fp.array() * gp.array() + fm.array() * gm.array());
  }
  return out;
}

std::vector<double> DiscreteGenerator::node(std::size_t index) const {
  std::vector<double> x(lattice_.axes.size());
  for (std::size_t a = 0; a < x.size(); ++a) {
    const auto& ax = lattice_.axes[a];
    x[a] = ax.node(static_cast<int>(index % ax.points));
    index /= ax.points;
  }
  return x;
}

std::size_t DiscreteGenerator::index_of(std::span<const int> k) const {
  if (k.size() != lattice_.axes.size()) throw std::invalid_argument("lattice index rank mismatch");
  std::size_t index = 0, stride = 1;
  for (std::size_t a = 0; a < k.size(); ++a) {
    const int n = lattice_.axes[a].points;
    if (k[a] < 0 || k[a] >= n) throw std::out_of_range("lattice index out of range");
    index += stride * static_cast<std::size_t>(k[a]);
    stride *= n;
  }
  return index;
}

Vector DiscreteGenerator::sample(const std::function<double(std::span<const double>)>& fn) const {
  Vector v(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto x = node(i);
    v[static_cast<Eigen::Index>(i)] = fn(x);
  }
  return v;
}

double DiscreteGenerator::norm(const Vector& f, double p) const {
  if (std::isinf(p)) return f.cwiseAbs().maxCoeff();
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
  return std::pow((f.cwiseAbs().array().pow(p) * mass_.array()).sum(), 1.0 / p);
}

DiscreteGenerator build_generator(const models::ModelCatalogEntry& entry,
                                  const models::PeriodicLatticeSpec& spec) {
  spec.validate();
  const auto& frame = entry.lattice_frame;
  if (frame.dim != spec.dim()) {
    throw std::invalid_argument("lattice rank " + std::to_string(spec.dim()) +
                                " does not match frame dimension " + std::to_string(frame.dim));
  }
  const std::size_t n = spec.total_points();
  const int dim = spec.dim();
  Stepper st(spec);

  double cell = 1.0;
  for (const auto& a : spec.axes) cell *= a.spacing();
  Vector mass(static_cast<Eigen::Index>(n));
  for (std::size_t p = 0; p < n; ++p) {
    auto k = st.unravel(p);
    std::vector<double> x(dim);
    for (int a = 0; a < dim; ++a) x[a] = spec.axes[a].node(k[a]);
    const double w = frame.density(x);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::domain_error("reference density must be positive at lattice nodes");
    }
    mass[static_cast<Eigen::Index>(p)] = w * cell;
  }
  const double volume = mass.sum();
  mass /= volume;

  std::vector<SparseMatrix> forward, backward;
  for (const auto& field : frame.fields) {
    std::vector<Triplet> tp, tm;
    for (std::size_t p = 0; p < n; ++p) {
      auto k = st.unravel(p);
      std::vector<double> x(dim);
      for (int a = 0; a < dim; ++a) x[a] = spec.axes[a].node(k[a]);
      for (int a = 0; a < dim; ++a) {
        if (!field[a]) continue;
        const double h = spec.axes[a].spacing();
        const auto row = static_cast<int>(p);
        const long up = st.neighbour(p, k, a, +1);
        if (up >= 0) {
          auto mid = x;
          mid[a] += 0.5 * h;
          const double c = field[a](mid) / h;
          if (c != 0.0) {
            tp.emplace_back(row, static_cast<int>(up), c);
            tp.emplace_back(row, row, -c);
          }
        }
        const long down = st.neighbour(p, k, a, -1);
        if (down >= 0) {
          auto mid = x;
          mid[a] -= 0.5 * h;
          const double c = field[a](mid) / h;
          if (c != 0.0) {
            tm.emplace_back(row, row, c);
            tm.emplace_back(row, static_cast<int>(down), -c);
          }
        }
      }
    }
    SparseMatrix dp(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    SparseMatrix dm(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    dp.setFromTriplets(tp.begin(), tp.end());
    dm.setFromTriplets(tm.begin(), tm.end());
    forward.push_back(std::move(dp));
    backward.push_back(std::move(dm));
  }

  SparseMatrix k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < forward.size(); ++i) {
    k += 0.5 * (weighted_gram(forward[i], mass) + weighted_gram(backward[i], mass));
  }
  // Exact symmetry regardless of summation order.
  SparseMatrix kt = k.transpose();
  k = 0.5 * (k + kt);
  k.prune(0.0);
  k.makeCompressed();
  return DiscreteGenerator(spec, std::move(k), std::move(mass), volume, std::move(forward),
                           std::move(backward));
}

DiscreteGenerator build_generator(const models::PeriodicLatticeSpec& spec) {
  return build_generator(models::catalog_entry(spec.model), spec);
}

}  // namespace cdcalc::semigroup
