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
#include <optional>
#include <string>
#include <vector>

#include "cdcalc/semigroup/generator.h"

namespace cdcalc::semigroup {

inline constexpr std::size_t kDenseLimit = 5000;
inline constexpr int kDefaultModes = 512;

struct HeatOptions {
  // Modes kept by the iterative path; the dense path keeps all of them.
  int modes = kDefaultModes;
  std::size_t dense_limit = kDenseLimit;
  // Directory for cached decompositions; empty means $CDCALC_CACHE if set.
  std::string cache_dir;
  bool use_cache = true;
};

struct HeatResult {
  Vector values;
  // Bound on ||P_t f - (returned)||_2 from the discarded modes; 0 when complete.
  double residual_bound = 0.0;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals(std::move(residuals)) {}
  std::vector<double> residuals;
};

// e^{tL} through an eigendecomposition of L that is orthonormal for the mass
// inner product. Eigenvalues of L are stored nonincreasing: 0 = l_0 >= l_1 >= ...
class HeatOperator {
 public:
  HeatOperator(Vector eigenvalues, Eigen::MatrixXd eigenvectors, Vector mass, bool complete);

  static HeatOperator build(const DiscreteGenerator& g, const HeatOptions& opts = {});
  static HeatOperator dense(const DiscreteGenerator& g);
  static HeatOperator iterative(const DiscreteGenerator& g, int modes);

  const Vector& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  const Vector& mass() const { return mass_; }
  bool complete() const { return complete_; }
  int modes() const { return static_cast<int>(eigenvalues_.size()); }

  // P_t f. Throws std::invalid_argument for t < 0.
  HeatResult apply(const Vector& f, double t) const;
  // L P_t f.
  Vector apply_generator(const Vector& f, double t) const;
  // Mode coefficients <v_k, f>_mass.
  Vector coefficients(const Vector& f) const;
  Vector synthesize(const Vector& coeffs, double t) const;
  // Column-wise versions for a batch of functions; `power` applies L^power.
  Eigen::MatrixXd coefficients_batch(const Eigen::MatrixXd& f) const;
  Eigen::MatrixXd synthesize_batch(const Eigen::MatrixXd& coeffs, double t, int power = 0) const;

  // p(x, x, t) w.r.t. the normalized mass. Throws for t <= 0.
  Vector kernel_diag(double t) const;
  // y -> p(x, y, t).
  Vector kernel_row(std::size_t x, double t) const;

  // k smallest eigenvalues of -L, ascending.
  std::vector<double> spectrum(int k) const;

 private:
  Vector eigenvalues_;
  Eigen::MatrixXd vectors_;
  Vector mass_;
  bool complete_;
};

// Spectrum-only helper: k smallest eigenvalues of -L.
std::vector<double> spectrum(const DiscreteGenerator& g, int k, const HeatOptions& opts = {});

// Cache directory from options or CDCALC_CACHE; nullopt when caching is off.
std::optional<std::string> cache_directory(const HeatOptions& opts);
// Stable key of a generator (FNV-1a over lattice, mass and stiffness entries).
std::string generator_fingerprint(const DiscreteGenerator& g);

}  // namespace cdcalc::semigroup
