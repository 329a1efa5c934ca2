// Copyright 2026 The ioncavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "ioncavity/dynamics/integrator.hpp"
#include "ioncavity/experiments/pipelines.hpp"
#include "ioncavity/model/builders.hpp"

namespace {

using namespace ioncavity;

void BM_EffectiveMonochromatic(benchmark::State& state) {
  const model::PhysicalParams p;
  const auto s = model::build_effective_model(p, experiments::superradiant_phase(p), true);
  dynamics::IntegratorConfig c;
  c.t_end = 6e-6;
  c.method = state.range(0) ? dynamics::Method::dopri5 : dynamics::Method::rk4;
  const auto obs = dynamics::standard_observables(s.model);
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::evolve(s.model, s.initial, c, obs));
}
BENCHMARK(BM_EffectiveMonochromatic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MappingRuns(benchmark::State& state) {
  const model::PhysicalParams p;
  experiments::RunOptions run;
  run.integrator.t_end = 10e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiments::mapping_runs(p, experiments::Encoding::superradiant, true, run));
  }
}
BENCHMARK(BM_MappingRuns)->Unit(benchmark::kMillisecond);

void BM_FullModelBichromatic(benchmark::State& state) {
  const model::PhysicalParams p;
  const auto m = model::build_full_model(p, model::DriveMode::bichromatic);
  const auto rho = qcore::DensityMatrix::pure(qcore::StateVector::basis(m.space, {0, 3, 0, 0}));
  dynamics::IntegratorConfig c;
  c.t_end = 1e-6;
  c.dt = 2e-10;
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::evolve(m, rho, c, {}));
}
BENCHMARK(BM_FullModelBichromatic)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
