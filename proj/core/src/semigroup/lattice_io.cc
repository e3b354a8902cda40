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

#include "cdcalc/semigroup/lattice_io.h"

#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace cdcalc::semigroup {

LatticeFunction LatticeFunction::from(const DiscreteGenerator& g, Vector values) {
  if (static_cast<std::size_t>(values.size()) != g.size()) {
    throw std::invalid_argument("lattice function size mismatch");
  }
  LatticeFunction f;
  for (const auto& a : g.lattice().axes) {
    f.dims.push_back(a.points);
    f.lo.push_back(a.lo);
    f.length.push_back(a.length);
    f.periodic.push_back(a.periodic);
  }
  f.mass_total = g.volume();
  f.values = std::move(values);
  f.mass = g.mass();
  return f;
}

void write_lattice_function(const std::string& path, const LatticeFunction& f) {
  if (f.values.size() != f.mass.size()) throw std::invalid_argument("values and mass sizes differ");
  nlohmann::json h{{"dims", f.dims},
                   {"box", {{"lo", f.lo}, {"length", f.length}}},
                   {"periodic", f.periodic},
                   {"mass_total", f.mass_total}};
  const std::string header = h.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const std::uint64_t len = header.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(header.data(), static_cast<std::streamsize>(len));
  const auto bytes = static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(f.values.size()));
  out.write(reinterpret_cast<const char*>(f.values.data()), bytes);
  out.write(reinterpret_cast<const char*>(f.mass.data()), bytes);
  if (!out) throw std::runtime_error("write failed for " + path);
}

LatticeFunction read_lattice_function(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!in || len > (1u << 24)) throw std::runtime_error("bad lattice function header in " + path);
  std::string header(len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(len));
  if (!in) throw std::runtime_error("truncated header in " + path);
  LatticeFunction f;
  try {
    auto h = nlohmann::json::parse(header);
    f.dims = h.at("dims").get<std::vector<int>>();
    f.lo = h.at("box").at("lo").get<std::vector<double>>();
    f.length = h.at("box").at("length").get<std::vector<double>>();
    f.periodic = h.at("periodic").get<std::vector<bool>>();
    f.mass_total = h.at("mass_total").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad lattice function header in " + path + ": " + e.what());
  }
  std::size_t n = 1;
  for (int d : f.dims) {
    if (d <= 0) throw std::runtime_error("bad lattice dims in " + path);
    n *= static_cast<std::size_t>(d);
  }
  f.values.resize(static_cast<Eigen::Index>(n));
  f.mass.resize(static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(8 * n));
  in.read(reinterpret_cast<char*>(f.mass.data()), static_cast<std::streamsize>(8 * n));
  if (!in) throw std::runtime_error("truncated data in " + path);
  return f;
}

}  // namespace cdcalc::semigroup
