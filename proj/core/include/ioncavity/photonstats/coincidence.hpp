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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace ioncavity::photonstats {

// Which double detections count as a two-photon event.
enum class Convention {
  cross_detector,  // one click on each detector after the splitter
  any_detector,    // any two clicks, same detector allowed
};
std::string to_string(Convention c);
Convention convention_from_string(const std::string& name);

struct CoincidenceParams {
  double p_SS = 0.03;      // attempts that prepared |S>|S> (two photons)
  double p_det = 0.054;    // detection probability of one photon in the window
  double window = 55e-6;   // s; dark counts are gated over the whole window
  double dark_rate_1 = 3.2;
  double dark_rate_2 = 3.8;
  double splitter_ratio = 0.5;  // probability a photon goes to detector 1
  Convention convention = Convention::cross_detector;

  void validate() const;
  double dark_1() const { return dark_rate_1 * window; }
  double dark_2() const { return dark_rate_2 * window; }
};

struct TwoPhotonExpectation {
  // (1) two photons, both detected; (2) two photons, one detected plus a
  // dark count; (3) one photon detected plus a dark count; (4) two darks.
  std::array<double, 4> events{};
  double total = 0.0;
  double expected_events(std::int64_t attempts) const {
    return total * static_cast<double>(attempts);
  }
};

TwoPhotonExpectation two_photon_expectation(const CoincidenceParams& p);

// Per-attempt click probabilities of detectors 1 and 2 (photons or darks).
std::array<double, 2> singles_probabilities(const CoincidenceParams& p);

struct MonteCarloEstimate {
  std::int64_t attempts = 0;
  std::int64_t events = 0;
  double rate = 0.0;
  double sigma = 0.0;  // binomial standard error of the rate
};
// Brute-force sampler of the generative model: |S>|S> with p_SS, each
// photon detected with p_det and routed by the splitter, independent dark
// clicks on each detector. Counts attempts that form a two-photon event
// under p.convention. Chunk c uses derive_seed(seed, c).
MonteCarloEstimate two_photon_monte_carlo(const CoincidenceParams& p, std::int64_t attempts,
                                          std::uint64_t seed, std::size_t threads = 1);

struct G2Estimate {
  double value = 0.0;
  double sigma = 0.0;
};
// N_c N / (N_1 N_2) with Poisson errors of all three counts.
G2Estimate g2_zero(std::int64_t coincidences, std::array<std::int64_t, 2> singles,
                   std::int64_t attempts);
// Expected g2(0) of the model: P(event) / (P_1 P_2).
double expected_g2(const CoincidenceParams& p);

}  // namespace ioncavity::photonstats
