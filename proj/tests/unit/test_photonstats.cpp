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
#include <random>

#include <gtest/gtest.h>

#include "ioncavity/error.hpp"
#include "ioncavity/photonstats/coincidence.hpp"

namespace ioncavity::photonstats {
namespace {

TEST(TwoPhoton, ZeroWithoutPairsOrDarks) {
  CoincidenceParams p;
  p.p_SS = 0.0;
  p.dark_rate_1 = p.dark_rate_2 = 0.0;
  for (auto c : {Convention::cross_detector, Convention::any_detector}) {
    p.convention = c;
    EXPECT_EQ(two_photon_expectation(p).total, 0.0);
  }
}

TEST(TwoPhoton, DefaultsBreakdown) {
  CoincidenceParams p;
  const auto cross = two_photon_expectation(p);
  EXPECT_NEAR(cross.events[0], 0.03 * 0.054 * 0.054 * 0.5, 1e-15);
  EXPECT_NEAR(cross.events[3], 3.2 * 55e-6 * 3.8 * 55e-6, 1e-18);
  p.convention = Convention::any_detector;
  const auto any = two_photon_expectation(p);
  EXPECT_NEAR(any.events[0], 2.0 * cross.events[0], 1e-15);
  EXPECT_NEAR(any.expected_events(223106), any.total * 223106, 1e-9);
  EXPECT_GT(any.total, cross.total);
}

TEST(TwoPhoton, DarkRateScalingIsExact) {
  CoincidenceParams p;
  for (auto c : {Convention::cross_detector, Convention::any_detector}) {
    p.convention = c;
    const auto a = two_photon_expectation(p);
    auto q = p;
    q.dark_rate_1 *= 2.0;
    q.dark_rate_2 *= 2.0;
    const auto b = two_photon_expectation(q);
    EXPECT_DOUBLE_EQ(b.events[0], a.events[0]);
    EXPECT_NEAR(b.events[1], 2.0 * a.events[1], 1e-15 * a.events[1]);
    EXPECT_NEAR(b.events[2], 2.0 * a.events[2], 1e-15 * a.events[2]);
    EXPECT_NEAR(b.events[3], 4.0 * a.events[3], 1e-15 * a.events[3]);
  }
}

TEST(TwoPhoton, MonotoneInEveryInput) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    CoincidenceParams p;
    p.p_SS = 0.2 * u(rng);
    p.p_det = 0.3 * u(rng);
    p.window = 100e-6 * u(rng);
    p.dark_rate_1 = 200.0 * u(rng);
    p.dark_rate_2 = 200.0 * u(rng);
    p.convention = trial % 2 ? Convention::any_detector : Convention::cross_detector;
    const double base = two_photon_expectation(p).total;
    auto bump = [&](double CoincidenceParams::*field, double by) {
      auto q = p;
      q.*field += by;
      EXPECT_GE(two_photon_expectation(q).total, base);
    };
    bump(&CoincidenceParams::p_SS, 0.01);
    bump(&CoincidenceParams::p_det, 0.01);
    bump(&CoincidenceParams::window, 1e-6);
    bump(&CoincidenceParams::dark_rate_1, 1.0);
    bump(&CoincidenceParams::dark_rate_2, 1.0);
  }
}

TEST(TwoPhoton, ClosedFormMatchesGenerativeModel) {
  // Draws keep dark probabilities and pair detections small, where the
  // four-event enumeration is complete to first order.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int draw = 0; draw < 10; ++draw) {
    CoincidenceParams p;
    p.p_SS = 0.02 + 0.08 * u(rng);
    p.p_det = 0.02 + 0.08 * u(rng);
    p.dark_rate_1 = 20.0 * u(rng);
    p.dark_rate_2 = 20.0 * u(rng);
    p.splitter_ratio = 0.4 + 0.2 * u(rng);
    p.convention = draw % 2 ? Convention::any_detector : Convention::cross_detector;
    const double expect = two_photon_expectation(p).total;
    const auto mc = two_photon_monte_carlo(p, 10000000, 100 + draw);
    const double sigma = std::sqrt(expect * (1.0 - expect) / 1e7);
    EXPECT_NEAR(mc.rate, expect, 3.0 * sigma) << "draw " << draw;
  }
}

TEST(TwoPhoton, MonteCarloThreadInvariant) {
  CoincidenceParams p;
  p.p_SS = 0.2;
  p.p_det = 0.3;
  const auto a = two_photon_monte_carlo(p, 9000000, 3, 1);
  const auto b = two_photon_monte_carlo(p, 9000000, 3, 3);
  EXPECT_EQ(a.events, b.events);
  EXPECT_THROW(two_photon_monte_carlo(p, 0, 3), ConfigError);
}

TEST(G2, Estimator) {
  EXPECT_EQ(g2_zero(0, {100, 120}, 1000).value, 0.0);
  const auto g = g2_zero(50, {1000, 2000}, 100000);
  EXPECT_NEAR(g.value, 50.0 * 100000 / (1000.0 * 2000.0), 1e-12);
  EXPECT_NEAR(g.sigma, g.value * std::sqrt(1.0 / 50 + 1.0 / 1000 + 1.0 / 2000), 1e-12);
  EXPECT_THROW(g2_zero(1, {0, 5}, 10), ConfigError);
  EXPECT_THROW(g2_zero(1, {5, 5}, 0), ConfigError);
}

TEST(G2, ObservedCountsConsistentWithExpectation) {
  // The same-detector-inclusive convention is the one whose expected count
  // matches the 28 recorded events.
  CoincidenceParams p;
  p.convention = Convention::any_detector;
  const std::int64_t attempts = 223106;
  const auto s = singles_probabilities(p);
  const std::array<std::int64_t, 2> singles{std::llround(s[0] * attempts), std::llround(s[1] * attempts)};
  const auto g = g2_zero(28, singles, attempts);
  EXPECT_LT(std::abs(g.value - expected_g2(p)), 2.0 * g.sigma);
  EXPECT_LT(g.value, 0.5);
}

TEST(Params, Validation) {
  CoincidenceParams p;
  p.p_det = 1.5;
  EXPECT_THROW(two_photon_expectation(p), ConfigError);
  p = CoincidenceParams{};
  p.dark_rate_1 = -1.0;
  EXPECT_THROW(two_photon_expectation(p), ConfigError);
  EXPECT_EQ(convention_from_string("any_detector"), Convention::any_detector);
  EXPECT_THROW(convention_from_string("both"), ConfigError);
}

}  // namespace
}  // namespace ioncavity::photonstats
