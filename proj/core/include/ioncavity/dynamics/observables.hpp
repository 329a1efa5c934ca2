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
#include <complex>
#include <vector>

#include "ioncavity/dynamics/integrator.hpp"
#include "ioncavity/dynamics/trajectory.hpp"
#include "ioncavity/model/params.hpp"
#include "ioncavity/qcore/state.hpp"

namespace ioncavity::dynamics {

// Detection probability per bin: eta * integral of 2 kappa (n_H + n_V) plus
// the summed dark counts of both detectors over the bin.
std::vector<double> photon_shape(const Trajectory& traj, const model::PhysicalParams& params);

// Same quantity over [t0, t1]. Zero for t0 == t1; throws for t1 < t0 or a
// window outside the trajectory.
double detection_probability(const Trajectory& traj, const model::PhysicalParams& params,
                             double t0, double t1);

// epsilon at every bin edge, starting with epsilon(0) = 0.
struct CumulativeEfficiency {
  std::vector<double> times;
  std::vector<double> epsilon;
};
CumulativeEfficiency cumulative_efficiency(const Trajectory& traj,
                                           const model::PhysicalParams& params);

// Detected-photon polarization matrix over [t0, t1] in the (H, V) basis,
// without dark counts: eta * integral of 2 kappa [[<a^dag a>, <b^dag a>],
// [<a^dag b>, <b^dag b>]]. Needs the two-mode standard observables.
using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;
Matrix2c polarization_integral(const Trajectory& traj, const model::PhysicalParams& params,
                               double t0, double t1);

// coherence_scale * exp(-(2t/tau_SSp)^2); tau must be > 0 (infinity allowed).
double coherence_factor(const model::PhysicalParams& params, double t);

// Multiplies every element between basis states of different qubit label by
// coherence_factor(params, t). Diagonal blocks are untouched.
qcore::DensityMatrix apply_imperfection_scalings(const qcore::DensityMatrix& rho,
                                                 const std::vector<int>& labels,
                                                 const model::PhysicalParams& params, double t);
std::vector<qcore::DensityMatrix> apply_imperfection_scalings(
    const std::vector<qcore::DensityMatrix>& series, const std::vector<double>& times,
    const std::vector<int>& labels, const model::PhysicalParams& params);

// The same scaling as an observation transform for evolve().
ObservationTransform imperfection_transform(std::vector<int> labels,
                                            const model::PhysicalParams& params);

}  // namespace ioncavity::dynamics
