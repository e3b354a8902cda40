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

#include "cdcalc/models/catalog.h"
#include "cdcalc/symbolic/model.h"
#include "cdcalc/symbolic/model_io.h"
#include "cdcalc/symbolic/polynomial.h"

namespace cdcalc::symbolic {
namespace {

ScalarField x(int dim, int i) { return ScalarField::coordinate(dim, i); }

TEST(Polynomial, ArithmeticAndDerivative) {
  const auto a = x(2, 0) * x(2, 0) + Rational(3, 2) * x(2, 1);
  EXPECT_EQ(a.degree(), 2);
  EXPECT_EQ(a.derivative(0), Rational(2) * x(2, 0));
  EXPECT_EQ(a.derivative(1), ScalarField::constant(2, Rational(3, 2)));
  EXPECT_TRUE((a - a).is_zero());
  std::vector<Rational> p{2, 4};
  EXPECT_EQ(a.evaluate(std::span<const Rational>(p)), Rational(10));
}

TEST(Polynomial, ExactBoxIntegral) {
  const auto f = x(2, 0) * x(2, 1) * x(2, 1);
  std::vector<Rational> lo{0, 0}, hi{1, 2};
  EXPECT_EQ(integrate_box(f, lo, hi), Rational(4, 3));
}

TEST(Polynomial, TaylorOfQuadraticIsItself) {
  const auto f = x(2, 0) * x(2, 1) + x(2, 0);
  std::vector<Rational> c{1, -1};
  EXPECT_EQ(f.truncated_taylor(c, 2), f);
}

TEST(Polynomial, NonCanonicalRationals) {
  // mpq_class(3, 3) is not reduced; arithmetic and equality must not depend on that.
  const auto a = ScalarField::constant(1, Rational(3, 3)) * x(1, 0);
  EXPECT_EQ(a, x(1, 0));
  EXPECT_TRUE((a - x(1, 0)).is_zero());
  auto b = x(1, 0);
  b *= Rational(4, 2);
  EXPECT_EQ(b, Rational(2) * x(1, 0));
  EXPECT_TRUE((Rational(2, 4) * x(1, 0) + Rational(-1, 2) * x(1, 0)).is_zero());
}

TEST(Polynomial, CompiledMatchesExact) {
  const auto f = x(3, 0) * x(3, 2) * x(3, 2) - Rational(1, 3) * x(3, 1);
  CompiledPolynomial c(f);
  std::vector<double> p{0.5, -1.25, 2.0};
  EXPECT_NEAR(c(p), f.evaluate(std::span<const double>(p)), 1e-14);
}

TEST(Model, HeisenbergBracketAndGamma) {
  auto e = models::heisenberg(1);
  const auto& h = e.model.horizontal();
  EXPECT_EQ(bracket(h[0], h[1]), e.model.vertical()[0]);
  const auto f = x(3, 0) * x(3, 2) + x(3, 1) * x(3, 1);
  EXPECT_NO_THROW(gamma(e.model, f));
  EXPECT_TRUE(gamma_forms_commute(e.model, f));
}

TEST(Model, SU2BracketsCyclic) {
  auto e = models::su2();
  const auto& h = e.model.horizontal();
  const auto& z = e.model.vertical()[0];
  EXPECT_EQ(bracket(h[0], h[1]), z);
  EXPECT_EQ(bracket(h[1], z), h[0]);
  EXPECT_EQ(bracket(z, h[0]), h[1]);
}

TEST(Model, JsonRoundTrip) {
  auto e = models::heisenberg(1);
  auto j = model_to_json(e.model);
  auto back = model_from_json(j);
  EXPECT_EQ(back.horizontal(), e.model.horizontal());
  EXPECT_EQ(back.vertical(), e.model.vertical());
}

TEST(Model, MalformedJsonRejected) {
  EXPECT_THROW(model_from_json(nlohmann::json{{"chart_dim", 3}}), std::invalid_argument);
}

TEST(Catalog, UnknownModelThrows) {
  EXPECT_THROW(models::catalog_entry("nope"), models::UnknownModel);
}

TEST(Catalog, CarnotRejectsStepThree) {
  // Engel-type table: [X1,X2] = Z1 and a vertical generator that is not central fails
  models::CarnotStructure s{2, {{0, 1, -1, 0}}};
  EXPECT_NO_THROW(models::step2_carnot(s));
  models::CarnotStructure bad{2, {{0, 1, 1, 0}}};
  EXPECT_THROW(models::step2_carnot(bad), std::invalid_argument);
}

}  // namespace
}  // namespace cdcalc::symbolic
