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

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cdcalc::symbolic {

using Rational = mpq_class;

// Exponent multi-index; entry i is the power of coordinate x_i.
using Exponent = std::vector<int>;

// Multivariate polynomial with exact rational coefficients on an
// n-dimensional coordinate chart. Zero coefficients are never stored, so two
// polynomials are equal iff their term maps are equal.
class ScalarField {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit ScalarField(int dim);

  static ScalarField constant(int dim, const Rational& c);
  static ScalarField coordinate(int dim, int i);
  static ScalarField monomial(const Exponent& e, const Rational& c = 1);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponent& e) const;

  // Adds c * x^e, dropping the term if the result cancels.
  void add_term(const Exponent& e, const Rational& c);

  ScalarField derivative(int i) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  // f(delta_lambda x) with delta_lambda(x)_i = lambda^{w_i} x_i.
  ScalarField dilate(std::span<const int> weights, const Rational& lambda) const;

  // Taylor polynomial of total degree <= max_degree around `center`,
  // expressed in the original (uncentered) coordinates.
  ScalarField truncated_taylor(std::span<const Rational> center, int max_degree) const;

  ScalarField pow(int k) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const Rational& c);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(ScalarField a, const Rational& c) { return a *= c; }
  friend ScalarField operator*(const Rational& c, ScalarField a) { return a *= c; }
  friend ScalarField operator-(ScalarField a) { return a *= Rational(-1); }
  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  int dim_;
  TermMap terms_;
};

// phi(f) for the univariate polynomial phi(s) = sum_k coeffs[k] s^k.
ScalarField compose_univariate(std::span<const Rational> coeffs, const ScalarField& f);

// Exact integral of f over the box prod_i [lo_i, hi_i].
Rational integrate_box(const ScalarField& f, std::span<const Rational> lo,
                       std::span<const Rational> hi);

// Floating-point copy of a polynomial for fast repeated evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const ScalarField& f);
  double operator()(std::span<const double> x) const;
  bool empty() const { return coeffs_.empty(); }

 private:
  int dim_ = 0;
  int max_power_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exponents_;  // row-major, dim_ entries per term
};

}  // namespace cdcalc::symbolic
