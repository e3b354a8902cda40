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

#include <gtest/gtest.h>

#include "cdcalc/certify/certifier.h"
#include "cdcalc/models/catalog.h"

namespace cdcalc::certify {
namespace {

std::vector<std::vector<double>> pts(const models::ModelCatalogEntry& e, int rnd = 20) {
  return sample_points(e, {3, rnd, 1.0, 7});
}

TEST(Certify, HeisenbergReferenceCertified) {
  auto e = models::heisenberg(1);
  auto r = verify_cd(e.model, *e.reference_cd, pts(e), nu_grid());
  EXPECT_TRUE(r.certified) << r.violations();
}

TEST(Certify, HeisenbergMaxRho1IsZero) {
  auto e = models::heisenberg(1);
  const auto& p = *e.reference_cd;
  double rho = maximize_rho1(e.model, p.rho2, p.kappa, p.d, pts(e), nu_grid());
  EXPECT_NEAR(rho, 0.0, 1e-5);
}

TEST(Certify, SU2MaxRho1IsOne) {
  auto e = models::su2();
  const auto& p = *e.reference_cd;
  double rho = maximize_rho1(e.model, p.rho2, p.kappa, p.d, pts(e), nu_grid());
  EXPECT_NEAR(rho, 1.0, 1e-5);
}

TEST(Certify, Carnot32Reference) {
  auto e = models::catalog_entry("carnot32");
  auto r = verify_cd(e.model, *e.reference_cd, pts(e, 10), nu_grid());
  EXPECT_TRUE(r.certified);
  const auto& p = *e.reference_cd;
  double rho = maximize_rho1(e.model, p.rho2, p.kappa, p.d, pts(e, 10), nu_grid());
  EXPECT_NEAR(rho, 0.0, 1e-5);
}

TEST(Certify, ViolationHasWitness) {
  auto e = models::heisenberg(1);
  auto p = e.reference_cd->with_rho1(0.5);
  auto r = verify_cd(e.model, p, pts(e, 0), nu_grid());
  ASSERT_FALSE(r.certified);
  for (const auto& c : r.cells) {
    if (c.psd) continue;
    JetFormAssembler a(e.model);
    auto w = witness_polynomial(c, a.basis());
    std::vector<Rational> x(c.point.begin(), c.point.end());
    auto def = cd_deficit(e.model, w, ExactCDParams::from(p), Rational(c.nu));
    EXPECT_LT(def.evaluate(std::span<const Rational>(x)).get_d(), 0.0);
    break;
  }
}

TEST(Certify, NonPositiveNuRejected) {
  auto e = models::heisenberg(1);
  std::vector<double> x{0, 0, 0};
  EXPECT_THROW(jet_form(e.model, x, *e.reference_cd, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace cdcalc::certify
