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

#include <nlohmann/json.hpp>
#include <string>

#include "cdcalc/symbolic/model.h"

namespace cdcalc::symbolic {

// Polynomials serialize as [{"exponents": [...], "numerator": ..., "denominator": ...}, ...].
// Numerators and denominators are written as integers when they fit in 64
// bits and as decimal strings otherwise; both forms are accepted on input.
nlohmann::json to_json(const ScalarField& f);
ScalarField scalar_field_from_json(const nlohmann::json& j, int dim);

// Model definition file:
//   {"chart_dim": n, "label": "...", "horizontal": [[poly, ...], ...],
//    "vertical": [[poly, ...], ...], "drift": [poly, ...]}
// "label" and "drift" are optional. Throws std::invalid_argument on malformed input.
nlohmann::json model_to_json(const SubRiemannianModel& m);
SubRiemannianModel model_from_json(const nlohmann::json& j);
SubRiemannianModel load_model_file(const std::string& path);

}  // namespace cdcalc::symbolic
