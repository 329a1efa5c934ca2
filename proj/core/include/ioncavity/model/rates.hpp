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
#include <optional>
#include <string>

#include "ioncavity/model/levels.hpp"
#include "ioncavity/model/params.hpp"

namespace ioncavity::model {

inline constexpr double kBohrMagnetonHzPerGauss = 1.3996e6;
inline constexpr double kLandeS = 2.0023;
inline constexpr double kLandeD = 1.2;
inline constexpr double kLandeP = 1.334;

// 2*pi*d*sin(theta)/lambda reduced to [0, 2*pi).
double raman_phase(const PhysicalParams& params);
// params.zeta when set, otherwise raman_phase(params).
double zeta_of(const PhysicalParams& params);

struct EffectiveRates {
  double g = 0.0;          // Hz
  double gamma_eff = 0.0;  // Hz
};

// g = xi*Omega*g_PD/(2*Delta), gamma_eff = gamma*(Omega/(2*Delta))^2.
EffectiveRates effective_rates(double Omega, const PhysicalParams& params, double xi);
EffectiveRates effective_rates(const PhysicalParams& params, double xi_SD);
// Set when |Delta| < 5*Omega, where the elimination of P is questionable.
std::optional<std::string> detuning_warning(double Omega, const PhysicalParams& params);
// xi that yields single-ion coupling g_target (Hz) for the S->D tone.
double calibrate_xi(const PhysicalParams& params, double g_target);

// Tone Rabi frequencies (Hz) on S->D and S'->D for a given drive mode.
struct ToneAssignment {
  double Omega_H = 0.0;  // S->D, emits into mode H
  double Omega_V = 0.0;  // S'->D, emits into mode V
};
ToneAssignment tone_assignment(const PhysicalParams& params, DriveMode mode);

// Zeeman shift in Hz of each of the six levels.
std::array<double, kFullIonLevels> zeeman_shifts(const PhysicalParams& params);

}  // namespace ioncavity::model
