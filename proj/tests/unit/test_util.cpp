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

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ioncavity/util/parallel.hpp"
#include "ioncavity/util/random.hpp"

namespace ioncavity::util {
namespace {

TEST(Seeds, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 20; ++m)
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(m, i));
  EXPECT_EQ(seen.size(), 1000u);
  auto a = make_rng(1, 2), b = make_rng(1, 2);
  EXPECT_EQ(a(), b());
}

TEST(Sampling, TwoOutcomeMeans) {
  auto rng = make_rng(5, 0);
  double f = 0.0, s = 0.0;
  const int reps = 200;
  for (int k = 0; k < reps; ++k) {
    const auto c = sample_two_outcomes(rng, 10000, 0.3, 0.5);
    EXPECT_LE(c.first + c.second, 10000);
    f += c.first;
    s += c.second;
  }
  // Four standard errors of the mean of reps binomial draws.
  EXPECT_NEAR(f / reps, 3000.0, 4.0 * std::sqrt(10000 * 0.3 * 0.7 / reps));
  EXPECT_NEAR(s / reps, 5000.0, 4.0 * std::sqrt(10000 * 0.5 * 0.5 / reps));
  const auto all = sample_two_outcomes(rng, 100, 1.0, 0.0);
  EXPECT_EQ(all.first, 100);
  EXPECT_EQ(all.second, 0);
}

TEST(Parallel, ResultsByIndexForAnyThreadCount) {
  for (std::size_t threads : {1u, 2u, 5u}) {
    const auto out = parallel_map(37, threads, [](std::size_t i) { return i * i; });
    ASSERT_EQ(out.size(), 37u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  try {
    parallel_map(20, 4, [](std::size_t i) -> int {
      if (i == 5 || i == 13) throw std::runtime_error("task " + std::to_string(i));
      return 0;
    });
    FAIL() << "no exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "task 5");
  }
}

}  // namespace
}  // namespace ioncavity::util
