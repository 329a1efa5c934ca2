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
#include <span>
#include <vector>

#include "ioncavity/tomography/process.hpp"

namespace ioncavity::tomography {

// Counts of one basis setting. n_first counts the first polarization of the
// basis (H, D, R) whichever detector saw it; detector_swap records that it
// was routed to detector 2.
struct MeasurementRecord {
  InputState input;
  Basis basis = Basis::HV;
  bool detector_swap = false;
  std::int64_t n_first = 0;
  std::int64_t n_second = 0;
  std::int64_t attempts = 0;

  void validate() const;
};

// Detected photon for one input: unnormalized polarization matrix per
// attempt (detection efficiency included, dark counts excluded).
struct PhotonSignal {
  InputState input;
  Matrix2 detected = Matrix2::Zero();
};

struct DetectorModel {
  // Dark-count probability of each detector over the window.
  double dark_1 = 0.0;
  double dark_2 = 0.0;
  // Detector 2 efficiency relative to detector 1 is 1 - asymmetry.
  double asymmetry = 0.10;
};

// Every signal measured in the three bases, each twice (swap off, on), with
// `shots` attempts per record. At most one click per attempt. Record k uses
// the random stream derive_seed(seed, k). Throws ConfigError for shots == 0.
std::vector<MeasurementRecord> simulate_measurements(std::span<const PhotonSignal> signals,
                                                     std::int64_t shots,
                                                     const DetectorModel& detectors,
                                                     std::uint64_t seed);

// Signals of an ideal source realizing `process` on the standard inputs.
std::vector<PhotonSignal> process_signals(const ProcessMatrix& process, double efficiency = 1.0);

// Expected (noise-free) counts instead of samples, rounded to integers.
std::vector<MeasurementRecord> expected_measurements(std::span<const PhotonSignal> signals,
                                                     std::int64_t shots,
                                                     const DetectorModel& detectors);

}  // namespace ioncavity::tomography
