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

#include "cdcalc/symbolic/polynomial.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cdcalc::symbolic {

namespace {

void require_same_dim(const ScalarField& a, const ScalarField& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()));
  }
}

Rational rational_pow(const Rational& base, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

ScalarField::ScalarField(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("polynomial dimension must be positive");
}

ScalarField ScalarField::constant(int dim, const Rational& c) {
  ScalarField f(dim);
  f.add_term(Exponent(dim, 0), c);
  return f;
}

ScalarField ScalarField::coordinate(int dim, int i) {
  if (i < 0 || i >= dim) throw std::out_of_range("coordinate index out of range");
  Exponent e(dim, 0);
  e[i] = 1;
  return monomial(e);
}

ScalarField ScalarField::monomial(const Exponent& e, const Rational& c) {
  ScalarField f(static_cast<int>(e.size()));
  f.add_term(e, c);
  return f;
}

bool ScalarField::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](int p) { return p == 0; }));
}

int ScalarField::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int p : e) d += p;
    deg = std::max(deg, d);
  }
  return deg;
}

Rational ScalarField::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ScalarField::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != dim_) {
    throw std::invalid_argument("exponent length does not match polynomial dimension");
  }
  // GMP arithmetic assumes canonical operands; mpq_class(3, 3) is not.
  Rational v = c;
  v.canonicalize();
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

ScalarField ScalarField::derivative(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("derivative index out of range");
  ScalarField d(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    d.terms_.emplace(std::move(f), c * e[i]);
  }
  return d;
}

Rational ScalarField::evaluate(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < dim_; ++i) term *= rational_pow(x[i], e[i]);
    sum += term;
  }
  return sum;
}

double ScalarField::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

ScalarField ScalarField::dilate(std::span<const int> weights, const Rational& lambda) const {
  if (static_cast<int>(weights.size()) != dim_) throw std::invalid_argument("weight length mismatch");
  ScalarField out(dim_);
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (int i = 0; i < dim_; ++i) w += weights[i] * e[i];
    out.terms_.emplace(e, c * rational_pow(lambda, w));
  }
  return out;
}

ScalarField ScalarField::truncated_taylor(std::span<const Rational> center, int max_degree) const {
  if (static_cast<int>(center.size()) != dim_) throw std::invalid_argument("center dimension mismatch");
  // Substitute x = a + u, keep total degree <= max_degree in u, then map back u = x - a.
  ScalarField shifted(dim_);
  for (const auto& [e, c] : terms_) {
    ScalarField term = ScalarField::constant(dim_, c);
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      ScalarField lin = ScalarField::coordinate(dim_, i) + ScalarField::constant(dim_, center[i]);
      term = term * lin.pow(e[i]);
    }
    shifted += term;
  }
  ScalarField kept(dim_);
  for (const auto& [e, c] : shifted.terms_) {
    int d = 0;
    for (int p : e) d += p;
    if (d <= max_degree) kept.terms_.emplace(e, c);
  }
  ScalarField result(dim_);
  for (const auto& [e, c] : kept.terms_) {
    ScalarField term = ScalarField::constant(dim_, c);
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      ScalarField lin = ScalarField::coordinate(dim_, i) - ScalarField::constant(dim_, center[i]);
      term = term * lin.pow(e[i]);
    }
    result += term;
  }
  return result;
}

ScalarField ScalarField::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  ScalarField result = ScalarField::constant(dim_, 1);
  ScalarField base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_dim(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_dim(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ScalarField& ScalarField::operator*=(const Rational& c) {
  Rational k = c;
  k.canonicalize();
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= k;
  return *this;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_dim(a, b);
  ScalarField out(a.dim());
  Exponent e(a.dim());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.dim(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string ScalarField::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    bool has_var = std::any_of(e.begin(), e.end(), [](int p) { return p > 0; });
    if (mag != 1 || !has_var) os << mag.get_str();
    for (int i = 0; i < dim_; ++i) {
      if (e[i] == 0) continue;
      os << "x" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

ScalarField compose_univariate(std::span<const Rational> coeffs, const ScalarField& f) {
  // Horner.
  ScalarField result(f.dim());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    result = result * f + ScalarField::constant(f.dim(), *it);
  }
  return result;
}

Rational integrate_box(const ScalarField& f, std::span<const Rational> lo,
                       std::span<const Rational> hi) {
  const int n = f.dim();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n) {
    throw std::invalid_argument("box dimension mismatch");
  }
  Rational total = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational term = c;
    for (int i = 0; i < n; ++i) {
      const int k = e[i] + 1;
      term *= (rational_pow(hi[i], k) - rational_pow(lo[i], k)) / Rational(k);
    }
    total += term;
  }
  return total;
}

CompiledPolynomial::CompiledPolynomial(const ScalarField& f) : dim_(f.dim()) {
  for (const auto& [e, c] : f.terms()) {
    coeffs_.push_back(c.get_d());
    for (int p : e) {
      exponents_.push_back(p);
      max_power_ = std::max(max_power_, p);
    }
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const int* e = exponents_.data() + t * dim_;
    for (int i = 0; i < dim_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace cdcalc::symbolic
