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

#include <cstddef>
#include <string>
#include <vector>

#include "ioncavity/model/levels.hpp"
#include "ioncavity/model/params.hpp"
#include "ioncavity/qcore/operator.hpp"
#include "ioncavity/qcore/state.hpp"

namespace ioncavity::model {

struct CollapseChannel {
  std::string name;
  qcore::Operator op;  // unit-normalized jump operator
  double rate = 0.0;   // angular, 1/s; the jump operator is sqrt(rate)*op
};

// Hamiltonian in angular units (rad/s, hbar = 1).
struct LindbladModel {
  qcore::HilbertSpace space;
  qcore::Operator hamiltonian;
  std::vector<CollapseChannel> collapse;
  // Number of photon modes (1 or 2) following the ion slots.
  std::size_t num_modes = 1;
  std::size_t ion_levels = kEffectiveIonLevels;

  void validate(double hermitian_tol = 1e-10) const;
  qcore::Operator photon_annihilation(std::size_t mode) const;
  qcore::Operator photon_number(std::size_t mode) const;
  // Population of ion (0 or 1) in the given level.
  qcore::Operator ion_projector(std::size_t ion, std::size_t lvl) const;
};

struct EffectiveModelOptions {
  DriveMode mode = DriveMode::monochromatic;
  std::size_t photon_cutoff = kDefaultPhotonCutoff;
  bool scattering = true;
  bool laser_dephasing = true;
};

// Four-level ions {S, S', D, D'} with the Raman transitions adiabatically
// eliminated. Monochromatic: space [4,4,n+1], one mode. Bichromatic:
// [4,4,n+1,n+1], S->D emits H, S'->D emits V.
LindbladModel build_effective_model(const PhysicalParams& params,
                                    const EffectiveModelOptions& options = {});

// Bare two-ion interaction of the monochromatic effective model
// (no collapse channels) on [2,2,2]: S=0, D=1, one mode with at most one
// photon. Used for the dark/bright state algebra.
qcore::Operator effective_interaction_minimal(double g_angular, double asym, double zeta);

struct EffectiveSetup {
  LindbladModel model;
  qcore::DensityMatrix initial;
};
// Monochromatic effective model with |Psi(phi)> (noisy when noisy = true)
// and cavity vacuum.
EffectiveSetup build_effective_model(const PhysicalParams& params, double phi, bool noisy);

struct FullModelOptions {
  std::size_t photon_cutoff = kDefaultPhotonCutoff;
  bool laser_dephasing = true;
  // Shift the D (and S') frame energies so the Raman resonance sits at the
  // light-shifted line.
  bool compensate_light_shifts = true;
};

// Six-level ions and two cavity modes: [6,6,n+1,n+1].
// The relative drive phase on the two ions equals zeta_of(params); after
// eliminating P the effective relative coupling phase is pi - zeta because
// the ions sit in adjacent antinodes.
LindbladModel build_full_model(const PhysicalParams& params, DriveMode mode,
                               const FullModelOptions& options = {});

// Relative coupling phase of the effective model equivalent to a full model
// built with drive phase difference zeta_full.
double effective_phase_from_full(double zeta_full);

// Embeds a two-ion state (levels 4 or 6 per ion) into `space` with every
// photon mode in vacuum. The ion dimensions must match.
qcore::DensityMatrix with_cavity_vacuum(const qcore::DensityMatrix& ions,
                                        const qcore::HilbertSpace& space);

// Per-basis-index label used to decide which density-matrix elements are
// qubit coherences: (number of ions in S or Pm plus H photons,
//                    number of ions in S' or Pp plus V photons).
// Elements between different labels are coherences of the S/S' qubit.
std::vector<int> qubit_labels(const qcore::HilbertSpace& space, std::size_t ion_levels);

}  // namespace ioncavity::model
