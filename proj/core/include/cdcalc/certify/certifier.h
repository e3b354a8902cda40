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

#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "cdcalc/certify/jet_form.h"
#include "cdcalc/models/catalog.h"

namespace cdcalc::certify {

inline constexpr double kDefaultPsdTolerance = 1e-9;

struct CertificateCell {
  std::size_t point_index = 0;
  std::size_t nu_index = 0;
  std::vector<double> point;
  double nu = 0.0;
  double min_eig = 0.0;
  bool psd = false;
  // Smallest-eigenvalue eigenvector on the centred jet basis; kept for violations.
  std::vector<double> witness;
};

struct CertificateReport {
  CDParams params;
  std::vector<std::vector<double>> points;
  std::vector<double> nus;
  double tolerance = kDefaultPsdTolerance;
  std::vector<CertificateCell> cells;  // ordered by (point index, nu index)
  bool certified = false;              // "certified at samples"

  std::size_t violations() const;
  nlohmann::json to_json() const;
};

struct SamplingOptions {
  int grid_per_axis = 3;
  int random_points = 100;
  double box = 1.0;  // points in [-box, box]^n
  std::uint64_t seed = 0;
};

// Fixed lattice grid plus uniform random points, mapped into the entry's point
// domain (projected to the unit sphere for ambient group charts, the origin
// dropped there).
std::vector<std::vector<double>> sample_points(const models::ModelCatalogEntry& e,
                                               const SamplingOptions& opts);

// nu in {2^k : k_min <= k <= k_max}.
std::vector<double> nu_grid(int k_min = -6, int k_max = 6);

// Per-model certifier with the jet terms precomputed at every (point, nu) cell.
class Certifier {
 public:
  Certifier(const SubRiemannianModel& model, std::vector<std::vector<double>> points,
            std::vector<double> nus);

  CertificateReport verify(const CDParams& p, double tol = kDefaultPsdTolerance) const;
  bool passes(const CDParams& p, double tol = kDefaultPsdTolerance) const;

  // Largest rho1 for which verify() passes, by bisection to absolute width
  // <= width after bracketing by doubling from [-2^10, 2^10]. Throws
  // std::domain_error when no rho1 down to -2^40 is certified.
  double maximize_rho1(double rho2, double kappa, double d, double tol = kDefaultPsdTolerance,
                       double width = 1e-6) const;

  const JetFormAssembler& assembler() const { return assembler_; }

 private:
  JetFormAssembler assembler_;
  std::vector<std::vector<double>> points_;
  std::vector<double> nus_;
  std::vector<JetTerms> terms_;  // one per point
};

CertificateReport verify_cd(const SubRiemannianModel& m, const CDParams& p,
                            const std::vector<std::vector<double>>& points,
                            const std::vector<double>& nus, double tol = kDefaultPsdTolerance);

double maximize_rho1(const SubRiemannianModel& m, double rho2, double kappa, double d,
                     const std::vector<std::vector<double>>& points,
                     const std::vector<double>& nus, double tol = kDefaultPsdTolerance);

// The witness eigenvector of a violated cell rendered as an exact polynomial
// centred at the cell's base point.
ScalarField witness_polynomial(const CertificateCell& cell, const std::vector<Exponent>& basis);

}  // namespace cdcalc::certify
