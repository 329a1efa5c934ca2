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

#pragma once

#include <cstdint>
#include <random>

namespace ioncavity::util {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; also used to derive independent per-task seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of task `index` under `master`. Depends only on the pair, so results
// do not depend on which worker runs the task.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Rng make_rng(std::uint64_t master, std::uint64_t index);

// Multinomial draw over (p1, p2, 1 - p1 - p2); returns the first two counts.
struct TwoCounts {
  std::int64_t first = 0;
  std::int64_t second = 0;
};
TwoCounts sample_two_outcomes(Rng& rng, std::int64_t trials, double p1, double p2);

}  // namespace ioncavity::util
