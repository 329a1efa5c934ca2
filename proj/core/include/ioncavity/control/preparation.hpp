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

#include <string>

#include "ioncavity/model/params.hpp"
#include "ioncavity/qcore/state.hpp"

namespace ioncavity::control {

enum class StateLabel { Psi, PsiPlus, Phi, psi1, psi2, SS, custom };

std::string to_string(StateLabel label);

struct PreparedState {
  StateLabel label = StateLabel::custom;
  qcore::DensityMatrix rho;  // two four-level ions, [4,4]
  double fidelity_target = 1.0;
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Two four-level ions {S, S', D, D'}.
const qcore::HilbertSpace& ion_pair_space();
qcore::StateVector ion_pair_ket(std::size_t level1, std::size_t level2);

// (|S>|D> + e^{i phi}|D>|S>)/sqrt(2). Noisy: prep_error_SS_DD moved equally
// into |S>|S> and |D>|D> with no coherence to the rest.
PreparedState prepare_psi_phi(double phi, const model::PhysicalParams& params, bool noisy);
// (|S>|S> + i|D>|D>)/sqrt(2).
PreparedState prepare_phi();
PreparedState prepare_psi_plus();
// psi1 = |S>|D'>, psi2 = |D'>|S>. Noisy: prep_error_single left in |S>|S>.
PreparedState prepare_single_ion(int which, const model::PhysicalParams& params, bool noisy);
// Applies |S> -> cos(a)|S> + e^{i b} sin(a)|S'> on both ions.
PreparedState prepare_superposition(double alpha, double beta, const PreparedState& base);

// Single-ion unitary of the superposition map, completed on span{S, S'}.
qcore::Operator superposition_unitary(double alpha, double beta, std::size_t ion_levels);

}  // namespace ioncavity::control
