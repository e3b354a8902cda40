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

#include <string>
#include <vector>

#include "cdcalc/semigroup/generator.h"

namespace cdcalc::semigroup {

// A lattice function together with its mass weights and lattice geometry.
// On disk: uint64 little-endian header length, a JSON header
// {"dims", "box": {"lo", "length"}, "periodic", "mass_total"}, then N doubles
// of values and N doubles of mass.
struct LatticeFunction {
  std::vector<int> dims;
  std::vector<double> lo, length;
  std::vector<bool> periodic;
  double mass_total = 1.0;
  Vector values;
  Vector mass;

  static LatticeFunction from(const DiscreteGenerator& g, Vector values);
};

void write_lattice_function(const std::string& path, const LatticeFunction& f);
// Throws std::runtime_error on a truncated or inconsistent file.
LatticeFunction read_lattice_function(const std::string& path);

}  // namespace cdcalc::semigroup
