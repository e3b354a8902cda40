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

#include "cdcalc/symbolic/model.h"

#include <stdexcept>

namespace cdcalc::symbolic {

namespace {

void require_dim(int expected, const ScalarField& f) {
  if (f.dim() != expected) {
    throw std::invalid_argument("dimension mismatch: model chart has dimension " +
                                std::to_string(expected) + ", field has " +
                                std::to_string(f.dim()));
  }
}

}  // namespace

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("vector field needs at least one component");
  for (const auto& c : components_) {
    if (c.dim() != dim()) {
      throw std::invalid_argument("vector field component dimension does not match field length");
    }
  }
}

VectorField VectorField::coordinate(int dim, int i) {
  std::vector<ScalarField> comps(dim, ScalarField(dim));
  comps.at(i) = ScalarField::constant(dim, 1);
  return VectorField(std::move(comps));
}

ScalarField apply(const VectorField& x, const ScalarField& f) {
  require_dim(x.dim(), f);
  ScalarField out(f.dim());
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    out += x[i] * f.derivative(i);
  }
  return out;
}

VectorField bracket(const VectorField& x, const VectorField& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("bracket of fields with different dimensions");
  std::vector<ScalarField> comps;
  comps.reserve(x.dim());
  for (int i = 0; i < x.dim(); ++i) comps.push_back(apply(x, y[i]) - apply(y, x[i]));
  return VectorField(std::move(comps));
}

ScalarField divergence(const VectorField& x) {
  ScalarField out(x.dim());
  for (int i = 0; i < x.dim(); ++i) out += x[i].derivative(i);
  return out;
}

SubRiemannianModel::SubRiemannianModel(std::string label, int chart_dim,
                                       std::vector<VectorField> horizontal,
                                       std::vector<VectorField> vertical,
                                       std::optional<VectorField> drift)
    : label_(std::move(label)),
      chart_dim_(chart_dim),
      horizontal_(std::move(horizontal)),
      vertical_(std::move(vertical)),
      drift_(std::move(drift)) {
  if (chart_dim_ <= 0) throw std::invalid_argument("chart dimension must be positive");
  if (horizontal_.empty()) throw std::invalid_argument("model needs at least one horizontal field");
  auto check = [&](const VectorField& v) {
    if (v.dim() != chart_dim_) throw std::invalid_argument("frame field dimension != chart dimension");
  };
  for (const auto& v : horizontal_) check(v);
  for (const auto& v : vertical_) check(v);
  if (drift_) check(*drift_);
}

ScalarField sub_laplacian(const SubRiemannianModel& m, const ScalarField& f) {
  require_dim(m.chart_dim(), f);
  ScalarField out(f.dim());
  for (const auto& x : m.horizontal()) out += apply(x, apply(x, f));
  if (m.drift()) out += apply(*m.drift(), f);
  return out;
}

ScalarField vertical_laplacian(const SubRiemannianModel& m, const ScalarField& f) {
  require_dim(m.chart_dim(), f);
  ScalarField out(f.dim());
  for (const auto& z : m.vertical()) out += apply(z, apply(z, f));
  return out;
}

ScalarField gamma_frame(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g) {
  require_dim(m.chart_dim(), f);
  require_dim(m.chart_dim(), g);
  ScalarField out(f.dim());
  for (const auto& x : m.horizontal()) out += apply(x, f) * apply(x, g);
  return out;
}

ScalarField gamma_Z_frame(const SubRiemannianModel& m, const ScalarField& f,
                          const ScalarField& g) {
  require_dim(m.chart_dim(), f);
  require_dim(m.chart_dim(), g);
  ScalarField out(f.dim());
  for (const auto& z : m.vertical()) out += apply(z, f) * apply(z, g);
  return out;
}

ScalarField gamma(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g) {
  const Rational half(1, 2);
  ScalarField by_definition =
      half * (sub_laplacian(m, f * g) - f * sub_laplacian(m, g) - g * sub_laplacian(m, f));
  ScalarField by_frame = gamma_frame(m, f, g);
  if (!(by_definition == by_frame)) {
    throw std::logic_error("Gamma definition and frame formula disagree on model " + m.label());
  }
  return by_frame;
}

ScalarField gamma(const SubRiemannianModel& m, const ScalarField& f) { return gamma(m, f, f); }

ScalarField gamma_Z(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g) {
  const Rational half(1, 2);
  ScalarField by_definition = half * (vertical_laplacian(m, f * g) - f * vertical_laplacian(m, g) -
                                      g * vertical_laplacian(m, f));
  ScalarField by_frame = gamma_Z_frame(m, f, g);
  if (!(by_definition == by_frame)) {
    throw std::logic_error("Gamma^Z definition and frame formula disagree on model " + m.label());
  }
  return by_frame;
}

ScalarField gamma_Z(const SubRiemannianModel& m, const ScalarField& f) { return gamma_Z(m, f, f); }

ScalarField gamma2(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g) {
  const Rational half(1, 2);
  return half * (sub_laplacian(m, gamma_frame(m, f, g)) - gamma_frame(m, f, sub_laplacian(m, g)) -
                 gamma_frame(m, g, sub_laplacian(m, f)));
}

ScalarField gamma2(const SubRiemannianModel& m, const ScalarField& f) { return gamma2(m, f, f); }

ScalarField gamma2_Z(const SubRiemannianModel& m, const ScalarField& f, const ScalarField& g) {
  const Rational half(1, 2);
  return half *
         (sub_laplacian(m, gamma_Z_frame(m, f, g)) - gamma_Z_frame(m, f, sub_laplacian(m, g)) -
          gamma_Z_frame(m, g, sub_laplacian(m, f)));
}

ScalarField gamma2_Z(const SubRiemannianModel& m, const ScalarField& f) {
  return gamma2_Z(m, f, f);
}

bool gamma_forms_commute(const SubRiemannianModel& m, const ScalarField& f) {
  return gamma_frame(m, f, gamma_Z_frame(m, f, f)) == gamma_Z_frame(m, f, gamma_frame(m, f, f));
}

}  // namespace cdcalc::symbolic
