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

#include "ioncavity/qcore/operator.hpp"
#include "ioncavity/qcore/state.hpp"

namespace {

using namespace ioncavity::qcore;

void BM_EmbedLadder(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HilbertSpace s{6, 6, n + 1, n + 1};
  for (auto _ : state) benchmark::DoNotOptimize(embed(annihilation(n), 2, s));
}
BENCHMARK(BM_EmbedLadder)->Arg(2)->Arg(4);

void BM_SparseApply(benchmark::State& state) {
  const HilbertSpace s{6, 6, 3, 3};
  const auto a = embed(annihilation(2), 2, s);
  const Operator h = a.adjoint() * a;
  const auto psi = StateVector::basis(s, {0, 3, 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(apply(h, psi));
}
BENCHMARK(BM_SparseApply);

}  // namespace
BENCHMARK_MAIN();
