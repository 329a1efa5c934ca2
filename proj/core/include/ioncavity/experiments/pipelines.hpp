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
#include <vector>

#include "ioncavity/dynamics/integrator.hpp"
#include "ioncavity/dynamics/observables.hpp"
#include "ioncavity/model/builders.hpp"
#include "ioncavity/model/params.hpp"
#include "ioncavity/tomography/measurement.hpp"
#include "ioncavity/tomography/mle.hpp"

// Reusable end-to-end pipelines shared by the CLI, tests and benchmarks.
namespace ioncavity::experiments {

struct RunOptions {
  dynamics::IntegratorConfig integrator;
  std::size_t threads = 1;
};

// Phase of |Psi(phi)> that couples maximally (minimally) to the cavity in
// the effective model, reduced to [0, 2pi).
double superradiant_phase(const model::PhysicalParams& params);
double subradiant_phase(const model::PhysicalParams& params);

// Two-ion state emitting into the monochromatic effective model. When
// `scalings` is set the imperfection transform is applied to the samples.
dynamics::Trajectory monochromatic_emission(const model::PhysicalParams& params,
                                            const qcore::DensityMatrix& ions, bool scalings,
                                            const dynamics::IntegratorConfig& cfg);

struct PhaseSweepOptions {
  double window = 6e-6;
  bool noisy = true;
  // Whether the single-ion reference carries the preparation error.
  bool noisy_reference = false;
};

struct PhaseSweepResult {
  std::vector<double> phases;
  std::vector<double> probability;  // detection probability in [0, window]
  std::vector<double> ratio;        // relative to the single-ion reference
  std::array<double, 2> single_ion{};  // psi1, psi2
  double reference_probability = 0.0;   // their mean
  double phi_super = 0.0;
  double phi_sub = 0.0;
  double r_super = 0.0;
  double r_sub = 0.0;
};

// Detection probability of |Psi(phi)> relative to the mean of psi1 and psi2
// for every phase, plus the two extremal phases evaluated directly.
PhaseSweepResult phase_sweep(const model::PhysicalParams& params, const std::vector<double>& phases,
                             const PhaseSweepOptions& opt, const RunOptions& run);

struct PhotonShapes {
  std::vector<double> bin_start;  // s
  std::vector<double> superradiant;
  std::vector<double> subradiant;
  std::vector<double> single_ion;
};
// Per-bin detection probabilities of the three states over the integrator
// span (monochromatic drive).
PhotonShapes photon_shapes(const model::PhysicalParams& params, bool noisy, const RunOptions& run);

struct YieldReduction {
  double reference = 0.0;  // without preparation error and scattering
  double noisy = 0.0;
  double reduction = 0.0;  // 1 - noisy / reference
};
// Superradiant photon yield over [0, window] with and without the
// preparation and scattering losses.
YieldReduction yield_reduction(const model::PhysicalParams& params, double window,
                               const RunOptions& run);

enum class Encoding { superradiant, single_ion };
const char* to_string(Encoding e);

// Bichromatic runs of one encoding for the four standard tomography inputs,
// in the order of tomography::kStandardInputs.
struct MappingSet {
  Encoding encoding = Encoding::superradiant;
  std::array<dynamics::Trajectory, 4> runs;
};
MappingSet mapping_runs(const model::PhysicalParams& params, Encoding encoding, bool noisy,
                        const RunOptions& run);

// Detected photon per input over [t0, t1].
std::vector<tomography::PhotonSignal> photon_signals(const MappingSet& set,
                                                     const model::PhysicalParams& params,
                                                     double t0, double t1);
tomography::DetectorModel detector_model(const model::PhysicalParams& params, double t0, double t1,
                                         double asymmetry);
// chi_00 from the expected (noise-free) click probabilities, darks included.
double expected_process_fidelity(const MappingSet& set, const model::PhysicalParams& params,
                                 double t0, double t1);

struct TomographyOptions {
  double window_start = 0.0;
  std::vector<double> window_ends{2e-6, 4e-6, 6e-6, 10e-6, 15e-6, 20e-6, 30e-6, 40e-6, 55e-6};
  std::int64_t shots = 2000;
  std::size_t resamples = 0;  // 0 skips the bootstrap
  double asymmetry = 0.10;
  std::uint64_t seed = 1;
};

struct TomographyPoint {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<double, 2> chi00{};     // superradiant, single ion
  std::array<double, 2> std_error{};  // bootstrap, 0 when skipped
  std::array<double, 2> expected{};  // noise-free estimate
  std::array<tomography::ProcessMatrix, 2> process;
};

// Synthetic measurement and reconstruction for every window. Window w of
// encoding e samples with seed derive_seed(seed, 2w + e).
std::vector<TomographyPoint> tomography_vs_window(const MappingSet& super, const MappingSet& single,
                                                  const model::PhysicalParams& params,
                                                  const TomographyOptions& opt,
                                                  std::size_t threads);

struct EfficiencyCurves {
  std::vector<double> times;
  std::vector<double> superradiant;
  std::vector<double> single_ion;
};
// Cumulative detection efficiency averaged over the four inputs.
EfficiencyCurves efficiency_curves(const MappingSet& super, const MappingSet& single,
                                   const model::PhysicalParams& params);

}  // namespace ioncavity::experiments
