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

#include "ioncavity/tomography/measurement.hpp"

#include <cmath>

#include "ioncavity/error.hpp"
#include "ioncavity/util/random.hpp"

namespace ioncavity::tomography {

void MeasurementRecord::validate() const {
  if (n_first < 0 || n_second < 0 || attempts < 0) {
    throw ConfigError("MeasurementRecord: negative count");
  }
  if (n_first + n_second > attempts) {
    throw ConfigError("MeasurementRecord: n_first + n_second exceeds attempts");
  }
}

namespace {

struct ClickProbabilities {
  double first = 0.0;
  double second = 0.0;
};

// Per-attempt click probabilities of the first and second polarization
// for one setting.
ClickProbabilities click_probabilities(const PhotonSignal& s, Basis b, bool swap,
                                       const DetectorModel& det) {
  const double e1 = 1.0;
  const double e2 = 1.0 - det.asymmetry;
  const double pf = (basis_projector(b, true) * s.detected).trace().real();
  const double ps = (basis_projector(b, false) * s.detected).trace().real();
  ClickProbabilities c;
  if (!swap) {
    c.first = e1 * pf + det.dark_1;
    c.second = e2 * ps + det.dark_2;
  } else {
    c.first = e2 * pf + det.dark_2;
    c.second = e1 * ps + det.dark_1;
  }
  if (c.first < 0.0 || c.second < 0.0 || c.first + c.second > 1.0) {
    throw ConfigError("simulate_measurements: click probabilities outside [0, 1]");
  }
  return c;
}

void check_inputs(std::span<const PhotonSignal> signals, std::int64_t shots,
                  const DetectorModel& det) {
  if (shots <= 0) throw ConfigError("simulate_measurements: shots must be > 0");
  if (signals.empty()) throw ConfigError("simulate_measurements: no signals");
  if (det.dark_1 < 0.0 || det.dark_2 < 0.0) throw ConfigError("detectors: negative dark probability");
  if (!(det.asymmetry >= 0.0 && det.asymmetry < 1.0)) {
    throw ConfigError("detectors.asymmetry: must be in [0, 1)");
  }
}

}  // namespace

std::vector<MeasurementRecord> simulate_measurements(std::span<const PhotonSignal> signals,
                                                     std::int64_t shots,
                                                     const DetectorModel& detectors,
                                                     std::uint64_t seed) {
  check_inputs(signals, shots, detectors);
  std::vector<MeasurementRecord> out;
  std::uint64_t k = 0;
  for (const auto& s : signals) {
    for (Basis b : kBases) {
      for (bool swap : {false, true}) {
        const auto p = click_probabilities(s, b, swap, detectors);
        util::Rng rng = util::make_rng(seed, k++);
        const auto c = util::sample_two_outcomes(rng, shots, p.first, p.second);
        out.push_back({s.input, b, swap, c.first, c.second, shots});
      }
    }
  }
  return out;
}

std::vector<MeasurementRecord> expected_measurements(std::span<const PhotonSignal> signals,
                                                     std::int64_t shots,
                                                     const DetectorModel& detectors) {
  check_inputs(signals, shots, detectors);
  std::vector<MeasurementRecord> out;
  const double n = static_cast<double>(shots);
  for (const auto& s : signals) {
    for (Basis b : kBases) {
      for (bool swap : {false, true}) {
        const auto p = click_probabilities(s, b, swap, detectors);
        out.push_back({s.input, b, swap, std::llround(p.first * n), std::llround(p.second * n),
                       shots});
      }
    }
  }
  return out;
}

std::vector<PhotonSignal> process_signals(const ProcessMatrix& process, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ConfigError("process_signals: efficiency must be in (0, 1]");
  }
  std::vector<PhotonSignal> out;
  for (const auto& in : kStandardInputs) {
    out.push_back({in, efficiency * process.apply(input_density(in))});
  }
  return out;
}

}  // namespace ioncavity::tomography
