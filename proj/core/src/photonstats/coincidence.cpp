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

#include "ioncavity/photonstats/coincidence.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "ioncavity/error.hpp"
#include "ioncavity/util/parallel.hpp"
#include "ioncavity/util/random.hpp"

namespace ioncavity::photonstats {

std::string to_string(Convention c) {
  return c == Convention::cross_detector ? "cross_detector" : "any_detector";
}

Convention convention_from_string(const std::string& name) {
  if (name == "cross_detector") return Convention::cross_detector;
  if (name == "any_detector") return Convention::any_detector;
  throw ConfigError("convention: expected 'cross_detector' or 'any_detector', got '" + name + "'");
}

void CoincidenceParams::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string("two_photon.") + name + ": must be in [0, 1]");
  };
  prob(p_SS, "p_SS");
  prob(p_det, "p_det");
  prob(splitter_ratio, "splitter_ratio");
  if (!(window >= 0.0) || !std::isfinite(window)) throw ConfigError("two_photon.window: must be >= 0");
  if (!(dark_rate_1 >= 0.0)) throw ConfigError("two_photon.dark_rate_1: must be >= 0");
  if (!(dark_rate_2 >= 0.0)) throw ConfigError("two_photon.dark_rate_2: must be >= 0");
  prob(dark_1(), "dark_rate_1 * window");
  prob(dark_2(), "dark_rate_2 * window");
}

TwoPhotonExpectation two_photon_expectation(const CoincidenceParams& p) {
  p.validate();
  const double s = p.splitter_ratio;
  const double d1 = p.dark_1();
  const double d2 = p.dark_2();
  const double q = p.p_det;
  TwoPhotonExpectation e;
  if (p.convention == Convention::cross_detector) {
    const double other_dark = s * d2 + (1.0 - s) * d1;
    e.events[0] = p.p_SS * q * q * 2.0 * s * (1.0 - s);
    e.events[1] = p.p_SS * 2.0 * q * (1.0 - q) * other_dark;
    e.events[2] = (1.0 - p.p_SS) * q * other_dark;
  } else {
    const double any_dark = d1 + d2;
    e.events[0] = p.p_SS * q * q;
    e.events[1] = p.p_SS * 2.0 * q * (1.0 - q) * any_dark;
    e.events[2] = (1.0 - p.p_SS) * q * any_dark;
  }
  e.events[3] = d1 * d2;
  e.total = e.events[0] + e.events[1] + e.events[2] + e.events[3];
  return e;
}

std::array<double, 2> singles_probabilities(const CoincidenceParams& p) {
  p.validate();
  const double photons = p.p_det * (1.0 + p.p_SS);  // mean detected photons
  return {photons * p.splitter_ratio + p.dark_1(), photons * (1.0 - p.splitter_ratio) + p.dark_2()};
}

MonteCarloEstimate two_photon_monte_carlo(const CoincidenceParams& p, std::int64_t attempts,
                                          std::uint64_t seed, std::size_t threads) {
  p.validate();
  if (attempts <= 0) throw ConfigError("two_photon_monte_carlo: attempts must be > 0");
  constexpr std::int64_t kChunk = 1 << 22;
  const auto chunks = static_cast<std::size_t>((attempts + kChunk - 1) / kChunk);
  const double d1 = p.dark_1();
  const double d2 = p.dark_2();
  const bool cross = p.convention == Convention::cross_detector;
  const auto counts = util::parallel_map(chunks, threads, [&](std::size_t c) {
    util::Rng rng = util::make_rng(seed, c);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t n = std::min(kChunk, attempts - begin);
    std::int64_t events = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      const int photons = u(rng) < p.p_SS ? 2 : 1;
      int clicks[2] = {0, 0};
      for (int ph = 0; ph < photons; ++ph) {
        if (u(rng) < p.p_det) ++clicks[u(rng) < p.splitter_ratio ? 0 : 1];
      }
      if (u(rng) < d1) ++clicks[0];
      if (u(rng) < d2) ++clicks[1];
      if (cross ? (clicks[0] > 0 && clicks[1] > 0) : (clicks[0] + clicks[1] >= 2)) ++events;
    }
    return events;
  });
  MonteCarloEstimate m;
  m.attempts = attempts;
  for (auto c : counts) m.events += c;
  const double n = static_cast<double>(attempts);
  m.rate = static_cast<double>(m.events) / n;
  m.sigma = std::sqrt(m.rate * (1.0 - m.rate) / n);
  return m;
}

G2Estimate g2_zero(std::int64_t coincidences, std::array<std::int64_t, 2> singles,
                   std::int64_t attempts) {
  if (attempts <= 0) throw ConfigError("g2_zero: attempts must be > 0");
  if (coincidences < 0) throw ConfigError("g2_zero: negative coincidence count");
  if (singles[0] <= 0 || singles[1] <= 0) throw ConfigError("g2_zero: zero singles");
  const double nc = static_cast<double>(coincidences);
  const double n1 = static_cast<double>(singles[0]);
  const double n2 = static_cast<double>(singles[1]);
  const double n = static_cast<double>(attempts);
  G2Estimate g;
  g.value = nc * n / (n1 * n2);
  // One-count scale when nothing coincided.
  const double nc_eff = std::max(nc, 1.0);
  g.sigma = (nc_eff * n / (n1 * n2)) * std::sqrt(1.0 / nc_eff + 1.0 / n1 + 1.0 / n2);
  return g;
}

double expected_g2(const CoincidenceParams& p) {
  const auto s = singles_probabilities(p);
  return two_photon_expectation(p).total / (s[0] * s[1]);
}

}  // namespace ioncavity::photonstats
