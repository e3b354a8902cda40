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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "cdcalc/certify/certifier.h"
#include "cdcalc/certify/jet_form.h"
#include "cdcalc/geometry/heisenberg.h"
#include "cdcalc/inequality/test_functions.h"
#include "cdcalc/models/catalog.h"
#include "cdcalc/semigroup/generator.h"
#include "cdcalc/semigroup/heat.h"

namespace {

using namespace cdcalc;

void BM_JetAssemblerSetup(benchmark::State& state) {
  const auto e = models::catalog_entry(state.range(0) == 0 ? "heisenberg" : "carnot32");
  for (auto _ : state) benchmark::DoNotOptimize(certify::JetFormAssembler(e.model));
}
BENCHMARK(BM_JetAssemblerSetup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_JetFormAt(benchmark::State& state) {
  const auto e = models::catalog_entry(state.range(0) == 0 ? "heisenberg" : "carnot32");
  const certify::JetFormAssembler a(e.model);
  const std::vector<double> x(static_cast<std::size_t>(e.model.chart_dim()), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(a.form_at(x, *e.reference_cd, 0.5));
}
BENCHMARK(BM_JetFormAt)->Arg(0)->Arg(1);

void BM_CertifyReference(benchmark::State& state) {
  const auto e = models::su2();
  certify::SamplingOptions so;
  const auto points = certify::sample_points(e, so);
  const certify::Certifier c(e.model, points, certify::nu_grid());
  for (auto _ : state) benchmark::DoNotOptimize(c.passes(*e.reference_cd));
}
BENCHMARK(BM_CertifyReference)->Unit(benchmark::kMillisecond);

models::PeriodicLatticeSpec heisenberg_lattice(int n) {
  auto spec = models::heisenberg(1).default_lattice;
  for (auto& a : spec.axes) a.points = n;
  return spec;
}

void BM_BuildGenerator(benchmark::State& state) {
  const auto e = models::heisenberg(1);
  const auto spec = heisenberg_lattice(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(semigroup::build_generator(e, spec));
  state.SetComplexityN(state.range(0) * state.range(0) * state.range(0));
}
BENCHMARK(BM_BuildGenerator)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->Complexity();

void BM_HeatDense(benchmark::State& state) {
  const auto e = models::heisenberg(1);
  const auto g = semigroup::build_generator(e, heisenberg_lattice(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(semigroup::HeatOperator::dense(g));
}
BENCHMARK(BM_HeatDense)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HeatApply(benchmark::State& state) {
  const auto e = models::heisenberg(1);
  const auto g = semigroup::build_generator(e, heisenberg_lattice(12));
  const auto h = semigroup::HeatOperator::dense(g);
  const auto fs = inequality::random_family(g, 1, 1, inequality::FunctionKind::kSigned);
  for (auto _ : state) benchmark::DoNotOptimize(h.apply(fs[0].values, 0.5));
}
BENCHMARK(BM_HeatApply)->Unit(benchmark::kMicrosecond);

void BM_CCDistance(benchmark::State& state) {
  geometry::DistanceOptions o;
  o.segments = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<geometry::Point> targets(64);
  for (auto& p : targets) p = {u(rng), u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometry::cc_distance({0, 0, 0}, targets[i++ % targets.size()], o));
  }
}
BENCHMARK(BM_CCDistance)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
