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

#include "ioncavity/util/random.hpp"

#include <algorithm>

#include "ioncavity/error.hpp"

namespace ioncavity::util {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(master, index)),
                    static_cast<std::uint32_t>(derive_seed(master, index) >> 32)};
  return Rng(seq);
}

TwoCounts sample_two_outcomes(Rng& rng, std::int64_t trials, double p1, double p2) {
  if (trials < 0) throw ConfigError("sample_two_outcomes: negative trial count");
  if (!(p1 >= 0.0) || !(p2 >= 0.0) || p1 + p2 > 1.0 + 1e-12) {
    throw ConfigError("sample_two_outcomes: probabilities outside the simplex");
  }
  TwoCounts c;
  if (trials == 0) return c;
  c.first = std::binomial_distribution<std::int64_t>(trials, std::min(p1, 1.0))(rng);
  const double rest = 1.0 - p1;
  const double q = rest > 0.0 ? std::clamp(p2 / rest, 0.0, 1.0) : 0.0;
  c.second = std::binomial_distribution<std::int64_t>(trials - c.first, q)(rng);
  return c;
}

}  // namespace ioncavity::util
