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

#include "cdcalc/symbolic/model_io.h"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace cdcalc::symbolic {

namespace {

using nlohmann::json;

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) {
      throw std::invalid_argument(std::string("invalid integer string for ") + what);
    }
    return z;
  }
  throw std::invalid_argument(std::string(what) + " must be an integer or decimal string");
}

VectorField field_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw std::invalid_argument("vector field must be an array of chart_dim polynomials");
  }
  std::vector<ScalarField> comps;
  comps.reserve(dim);
  for (const auto& p : j) comps.push_back(scalar_field_from_json(p, dim));
  return VectorField(std::move(comps));
}

json field_to_json(const VectorField& v) {
  json arr = json::array();
  for (const auto& c : v.components()) arr.push_back(to_json(c));
  return arr;
}

}  // namespace

json to_json(const ScalarField& f) {
  json arr = json::array();
  for (const auto& [e, c] : f.terms()) {
    arr.push_back({{"exponents", e},
                   {"numerator", integer_to_json(c.get_num())},
                   {"denominator", integer_to_json(c.get_den())}});
  }
  return arr;
}

ScalarField scalar_field_from_json(const json& j, int dim) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of terms");
  ScalarField f(dim);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("exponents") || !term.contains("numerator")) {
      throw std::invalid_argument("polynomial term needs 'exponents' and 'numerator'");
    }
    auto e = term.at("exponents").get<Exponent>();
    if (static_cast<int>(e.size()) != dim) {
      throw std::invalid_argument("term exponent length does not match chart_dim");
    }
    for (int p : e) {
      if (p < 0) throw std::invalid_argument("negative exponent in polynomial term");
    }
    mpz_class num = integer_from_json(term.at("numerator"), "numerator");
    mpz_class den = term.contains("denominator") ? integer_from_json(term.at("denominator"), "denominator")
                                                 : mpz_class(1);
    if (den == 0) throw std::invalid_argument("zero denominator in polynomial term");
    Rational c(num, den);
    c.canonicalize();
    f.add_term(e, c);
  }
  return f;
}

json model_to_json(const SubRiemannianModel& m) {
  json j;
  j["chart_dim"] = m.chart_dim();
  j["label"] = m.label();
  j["horizontal"] = json::array();
  for (const auto& x : m.horizontal()) j["horizontal"].push_back(field_to_json(x));
  j["vertical"] = json::array();
  for (const auto& z : m.vertical()) j["vertical"].push_back(field_to_json(z));
  if (m.drift()) j["drift"] = field_to_json(*m.drift());
  return j;
}

SubRiemannianModel model_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model definition must be a JSON object");
  if (!j.contains("chart_dim") || !j.at("chart_dim").is_number_integer()) {
    throw std::invalid_argument("model definition needs integer 'chart_dim'");
  }
  const int n = j.at("chart_dim").get<int>();
  if (n <= 0) throw std::invalid_argument("chart_dim must be positive");
  if (!j.contains("horizontal") || !j.at("horizontal").is_array()) {
    throw std::invalid_argument("model definition needs a 'horizontal' array");
  }
  std::vector<VectorField> horizontal;
  for (const auto& f : j.at("horizontal")) horizontal.push_back(field_from_json(f, n));
  std::vector<VectorField> vertical;
  if (j.contains("vertical")) {
    for (const auto& f : j.at("vertical")) vertical.push_back(field_from_json(f, n));
  }
  std::optional<VectorField> drift;
  if (j.contains("drift") && !j.at("drift").is_null()) drift = field_from_json(j.at("drift"), n);
  std::string label = j.value("label", std::string("custom"));
  return SubRiemannianModel(std::move(label), n, std::move(horizontal), std::move(vertical),
                            std::move(drift));
}

SubRiemannianModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("model file " + path + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace cdcalc::symbolic
