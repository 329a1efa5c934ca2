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

#include "ioncavity/tomography/measurement.hpp"
#include "ioncavity/tomography/mle.hpp"

namespace {

using namespace ioncavity::tomography;

std::vector<MeasurementRecord> records(std::int64_t shots) {
  Matrix4 chi = Matrix4::Zero();
  chi(0, 0) = 0.9;
  chi(3, 3) = 0.1;
  return simulate_measurements(process_signals(ProcessMatrix(chi), 0.05), shots, DetectorModel{1e-4, 1e-4, 0.1}, 3);
}

void BM_MleProcess(benchmark::State& state) {
  const auto r = records(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mle_process(r));
}
BENCHMARK(BM_MleProcess)->Arg(2000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  const auto r = records(2000);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap(r, 100, 5, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Bootstrap)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
