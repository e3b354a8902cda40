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

#include "cdcalc/semigroup/heat.h"

#include <lapacke.h>

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace cdcalc::semigroup {

namespace {

constexpr std::uint64_t kCacheMagic = 0x31474945434c4143ULL;  // "CALCEIG1"

void fix_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double scale = v.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) > 1e-10 * scale) {
        if (v(i, j) < 0.0) v.col(j) *= -1.0;
        break;
      }
    }
  }
}

// Symmetric form S = M^{-1/2} K M^{-1/2}; its eigenvalues are those of -L.
SparseMatrix symmetric_form(const DiscreteGenerator& g) {
  Vector s = g.mass().cwiseSqrt().cwiseInverse();
  SparseMatrix out = s.asDiagonal() * g.stiffness() * s.asDiagonal();
  out.makeCompressed();
  return out;
}

std::optional<HeatOperator> load_cached(const std::string& path, const Vector& mass) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::uint64_t magic = 0, n = 0, m = 0, complete = 0;
  in.read(reinterpret_cast<char*>(&magic), 8);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&m), 8);
  in.read(reinterpret_cast<char*>(&complete), 8);
  if (!in || magic != kCacheMagic || n != static_cast<std::uint64_t>(mass.size())) return std::nullopt;
  Vector values(static_cast<Eigen::Index>(m));
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(8 * m));
  in.read(reinterpret_cast<char*>(vectors.data()), static_cast<std::streamsize>(8 * n * m));
  if (!in) return std::nullopt;
  return HeatOperator(std::move(values), std::move(vectors), mass, complete != 0);
}

void store_cached(const std::string& path, const HeatOperator& h) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    const std::uint64_t n = h.eigenvectors().rows(), m = h.eigenvectors().cols();
    const std::uint64_t complete = h.complete() ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&kCacheMagic), 8);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&m), 8);
    out.write(reinterpret_cast<const char*>(&complete), 8);
    out.write(reinterpret_cast<const char*>(h.eigenvalues().data()), static_cast<std::streamsize>(8 * m));
    out.write(reinterpret_cast<const char*>(h.eigenvectors().data()),
              static_cast<std::streamsize>(8 * n * m));
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

// Orthonormalizes the columns of `block` against `basis` (first `used`
// columns) and among themselves; returns the surviving columns.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& basis, Eigen::Index used, Eigen::MatrixXd block) {
  for (int pass = 0; pass < 2; ++pass) {
    if (used > 0) {
      auto q = basis.leftCols(used);
      block -= q * (q.transpose() * block);
    }
  }
  Eigen::MatrixXd out(block.rows(), 0);
  for (Eigen::Index j = 0; j < block.cols(); ++j) {
    Vector v = block.col(j);
    const double before = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      if (out.cols() > 0) v -= out * (out.transpose() * v);
      if (used > 0) v -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
    }
    const double after = v.norm();
    if (after <= 1e-10 * std::max(before, 1e-300)) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / after;
  }
  return out;
}

// True when (w, u) is an accurate eigendecomposition of s: every column's
// residual is small and u^T u x = x for a random probe x. Costs O(N^2).
bool decomposition_ok(const SparseMatrix& s, const Vector& w, const Eigen::MatrixXd& u) {
  const double scale = 1.0 + w.cwiseAbs().maxCoeff();
  Eigen::MatrixXd r = s * u - u * w.asDiagonal();
  if (!r.allFinite() || r.colwise().norm().maxCoeff() > 1e-8 * scale) return false;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  Vector x(u.rows());
  for (auto& v : x) v = normal(rng);
  Vector back = u.transpose() * (u * x);
  return (back - x).norm() <= 1e-8 * x.norm();
}

}  // namespace

HeatOperator::HeatOperator(Vector eigenvalues, Eigen::MatrixXd eigenvectors, Vector mass,
                           bool complete)
    : eigenvalues_(std::move(eigenvalues)),
      vectors_(std::move(eigenvectors)),
      mass_(std::move(mass)),
      complete_(complete) {
  if (vectors_.cols() != eigenvalues_.size() || vectors_.rows() != mass_.size()) {
    throw std::invalid_argument("eigendecomposition shape mismatch");
  }
}

HeatOperator HeatOperator::dense(const DiscreteGenerator& g) {
  const auto n = static_cast<lapack_int>(g.size());
  const SparseMatrix sym = symmetric_form(g);
  Eigen::MatrixXd s = Eigen::MatrixXd(sym);
  Vector w(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, s.data(), n, w.data());
  if (info != 0 || !decomposition_ok(sym, w, s)) {
    // Some BLAS builds pick kernels that miscompute on the host CPU; fall back
    // to Eigen's solver rather than return a wrong basis.
    std::cerr << "cdcalc: LAPACK eigendecomposition failed validation (info " << info
              << "); using the Eigen solver. Setting OPENBLAS_CORETYPE may fix the BLAS.\n";
    const Eigen::MatrixXd dense_sym(sym);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_sym);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed", {});
    w = es.eigenvalues();
    s = es.eigenvectors();
    if (!decomposition_ok(sym, w, s)) throw ConvergenceFailure("dense eigensolver inaccurate", {});
  }
  Eigen::MatrixXd v = g.mass().cwiseSqrt().cwiseInverse().asDiagonal() * s;
  fix_signs(v);
  return HeatOperator(-w, std::move(v), g.mass(), true);
}

HeatOperator HeatOperator::iterative(const DiscreteGenerator& g, int modes) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (modes <= 0 || modes > n) throw std::invalid_argument("mode count out of range");
  const SparseMatrix s = symmetric_form(g);
  // Shift-invert with a small positive shift; S is singular on constants.
  const double shift = 1e-2;
  Eigen::SparseMatrix<double> shifted(s);
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("sparse factorization failed", {});

  const Eigen::Index block = 8;
  const Eigen::Index cap = std::min<Eigen::Index>(n, modes + std::max<Eigen::Index>(2 * modes, 160));
  if (static_cast<double>(n) * static_cast<double>(cap) * 8.0 > 4e9) {
    throw std::invalid_argument("iterative basis would exceed 4 GB; lower the mode count");
  }
  Eigen::MatrixXd basis(n, cap);
  Eigen::Index used = 0;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd start(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i) start(i, j) = normal(rng);
  Eigen::MatrixXd current = orthonormalize(basis, 0, start);

  Vector ritz_values;
  Eigen::MatrixXd ritz_vectors;
  std::vector<double> residuals;
  int steps = 0;
  while (true) {
    ++steps;
    const Eigen::Index take = std::min<Eigen::Index>(current.cols(), cap - used);
    basis.middleCols(used, take) = current.leftCols(take);
    used += take;
    const bool full = used >= cap;
    if (used >= modes + block && (steps % 4 == 0 || full)) {
      auto q = basis.leftCols(used);
      Eigen::MatrixXd h = q.transpose() * (s * q);
      h = 0.5 * (h + h.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      ritz_values = es.eigenvalues().head(modes);
      ritz_vectors = q * es.eigenvectors().leftCols(modes);
      residuals.assign(static_cast<std::size_t>(modes), 0.0);
      bool ok = true;
      for (int k = 0; k < modes; ++k) {
        Vector r = s * ritz_vectors.col(k) - ritz_values[k] * ritz_vectors.col(k);
        residuals[static_cast<std::size_t>(k)] = r.norm();
        if (r.norm() > 1e-8 * (1.0 + std::abs(ritz_values[k]))) ok = false;
      }
      if (ok) break;
      if (full) {
        throw ConvergenceFailure("block Lanczos did not converge for " + std::to_string(modes) +
                                     " modes",
                                 residuals);
      }
    }
    if (full) throw ConvergenceFailure("Krylov basis exhausted before convergence", residuals);
    Eigen::MatrixXd next = solver.solve(basis.middleCols(used - take, take));
    current = orthonormalize(basis, used, next);
    if (current.cols() == 0) {
      // Invariant subspace reached; restart with fresh random directions.
      for (Eigen::Index j = 0; j < block; ++j)
        for (Eigen::Index i = 0; i < n; ++i) start(i, j) = normal(rng);
      current = orthonormalize(basis, used, start);
    }
  }
  Eigen::MatrixXd v = g.mass().cwiseSqrt().cwiseInverse().asDiagonal() * ritz_vectors;
  fix_signs(v);
  return HeatOperator(-ritz_values, std::move(v), g.mass(), modes == n);
}

HeatOperator HeatOperator::build(const DiscreteGenerator& g, const HeatOptions& opts) {
  const bool use_dense = g.size() <= opts.dense_limit;
  const auto dir = cache_directory(opts);
  std::string path;
  if (dir) {
    std::ostringstream name;
    name << generator_fingerprint(g) << (use_dense ? "-full" : "-m" + std::to_string(opts.modes))
         << ".eig";
    path = (std::filesystem::path(*dir) / name.str()).string();
    if (auto cached = load_cached(path, g.mass())) return std::move(*cached);
  }
  HeatOperator h = use_dense ? dense(g)
                             : iterative(g, std::min<int>(opts.modes, static_cast<int>(g.size())));
  if (dir) {
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    store_cached(path, h);
  }
  return h;
}

Vector HeatOperator::coefficients(const Vector& f) const {
  if (f.size() != mass_.size()) throw std::invalid_argument("lattice function size mismatch");
  return vectors_.transpose() * mass_.cwiseProduct(f);
}

Vector HeatOperator::synthesize(const Vector& coeffs, double t) const {
  Vector damp = (eigenvalues_ * t).array().exp();
  return vectors_ * damp.cwiseProduct(coeffs);
}

Eigen::MatrixXd HeatOperator::coefficients_batch(const Eigen::MatrixXd& f) const {
  if (f.rows() != mass_.size()) throw std::invalid_argument("lattice function size mismatch");
  return vectors_.transpose() * (mass_.asDiagonal() * f);
}

Eigen::MatrixXd HeatOperator::synthesize_batch(const Eigen::MatrixXd& coeffs, double t, int power) const {
  Vector damp = (eigenvalues_ * t).array().exp();
  for (int i = 0; i < power; ++i) damp = damp.cwiseProduct(eigenvalues_);
  return vectors_ * (damp.asDiagonal() * coeffs);
}

HeatResult HeatOperator::apply(const Vector& f, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("heat time must be >= 0");
  Vector c = coefficients(f);
  HeatResult r{synthesize(c, t), 0.0};
  if (!complete_) {
    Vector rest = f - vectors_ * c;
    const double rest_norm = std::sqrt((rest.array().square() * mass_.array()).sum());
    r.residual_bound = rest_norm * std::exp(eigenvalues_[eigenvalues_.size() - 1] * t);
  }
  return r;
}

Vector HeatOperator::apply_generator(const Vector& f, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("heat time must be >= 0");
  Vector c = coefficients(f);
  return synthesize(eigenvalues_.cwiseProduct(c), t);
}

Vector HeatOperator::kernel_diag(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
  Vector damp = (eigenvalues_ * t).array().exp();
  return vectors_.array().square().matrix() * damp;
}

Vector HeatOperator::kernel_row(std::size_t x, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
  if (x >= static_cast<std::size_t>(mass_.size())) throw std::out_of_range("kernel row index");
  Vector damp = (eigenvalues_ * t).array().exp();
  Vector c = damp.cwiseProduct(vectors_.row(static_cast<Eigen::Index>(x)).transpose());
  return vectors_ * c;
}

std::vector<double> HeatOperator::spectrum(int k) const {
  if (k < 0 || k > modes()) throw std::invalid_argument("requested more eigenvalues than available");
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = -eigenvalues_[i];
  return out;
}

std::vector<double> spectrum(const DiscreteGenerator& g, int k, const HeatOptions& opts) {
  if (k < 1 || static_cast<std::size_t>(k) > g.size()) throw std::invalid_argument("spectrum count must lie in [1, N]");
  HeatOptions o = opts;
  if (g.size() > o.dense_limit) o.modes = k;
  return HeatOperator::build(g, o).spectrum(k);
}

std::optional<std::string> cache_directory(const HeatOptions& opts) {
  if (!opts.use_cache) return std::nullopt;
  if (!opts.cache_dir.empty()) return opts.cache_dir;
  if (const char* env = std::getenv("CDCALC_CACHE"); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

std::string generator_fingerprint(const DiscreteGenerator& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  mix(g.lattice().model.data(), g.lattice().model.size());
  for (const auto& a : g.lattice().axes) {
    mix(&a.lo, sizeof a.lo);
    mix(&a.length, sizeof a.length);
    mix(&a.points, sizeof a.points);
    mix(&a.periodic, sizeof a.periodic);
    mix(&a.twist_axis, sizeof a.twist_axis);
    mix(&a.twist, sizeof a.twist);
  }
  mix(g.mass().data(), sizeof(double) * static_cast<std::size_t>(g.mass().size()));
  const auto& k = g.stiffness();
  mix(k.valuePtr(), sizeof(double) * static_cast<std::size_t>(k.nonZeros()));
  mix(k.innerIndexPtr(), sizeof(int) * static_cast<std::size_t>(k.nonZeros()));
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace cdcalc::semigroup
