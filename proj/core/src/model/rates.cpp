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

#include "ioncavity/model/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ioncavity/error.hpp"

namespace ioncavity::model {

double raman_phase(const PhysicalParams& params) {
  if (!(params.raman_wavelength > 0.0)) throw ConfigError("raman_phase: wavelength must be > 0");
  // Reduce the optical path difference in wavelengths first; the raw phase
  // is ~63 rad and its fractional part carries the answer.
  const double waves = params.ion_separation * std::sin(params.raman_angle) / params.raman_wavelength;
  double frac = waves - std::floor(waves);
  double z = 2.0 * std::numbers::pi * frac;
  if (z >= 2.0 * std::numbers::pi) z -= 2.0 * std::numbers::pi;
  return z;
}

double zeta_of(const PhysicalParams& params) {
  return params.zeta ? *params.zeta : raman_phase(params);
}

EffectiveRates effective_rates(double Omega, const PhysicalParams& params, double xi) {
  if (params.Delta == 0.0) throw ConfigError("effective_rates: Delta must be nonzero");
  const double ratio = Omega / (2.0 * params.Delta);
  return {xi * params.g_PD * ratio, params.gamma * ratio * ratio};
}

EffectiveRates effective_rates(const PhysicalParams& params, double xi_SD) {
  return effective_rates(params.Omega_SD, params, xi_SD);
}

std::optional<std::string> detuning_warning(double Omega, const PhysicalParams& params) {
  if (std::abs(params.Delta) < 5.0 * std::abs(Omega)) {
    return "Delta (" + std::to_string(params.Delta) + " Hz) is less than 5*Omega (" +
           std::to_string(Omega) + " Hz); adiabatic elimination of P is unreliable";
  }
  return std::nullopt;
}

double calibrate_xi(const PhysicalParams& params, double g_target) {
  if (params.Omega_SD == 0.0 || params.g_PD == 0.0) {
    throw ConfigError("calibrate_xi: Omega_SD and g_PD must be nonzero");
  }
  return 2.0 * params.Delta * g_target / (params.Omega_SD * params.g_PD);
}

ToneAssignment tone_assignment(const PhysicalParams& params, DriveMode mode) {
  if (mode == DriveMode::monochromatic) return {params.Omega_SD, 0.0};
  if (params.larger_tone_on_SpD) {
    return {std::min(params.Omega_SD, params.Omega_SpD), std::max(params.Omega_SD, params.Omega_SpD)};
  }
  return {params.Omega_SD, params.Omega_SpD};
}

std::array<double, kFullIonLevels> zeeman_shifts(const PhysicalParams& params) {
  if (params.B < 0.0) throw ConfigError("zeeman_shifts: B must be >= 0");
  const double unit = kBohrMagnetonHzPerGauss * params.B;
  std::array<double, kFullIonLevels> z{};
  z[level::S] = kLandeS * -0.5 * unit;
  z[level::Sp] = kLandeS * 0.5 * unit;
  z[level::D] = kLandeD * -0.5 * unit;
  z[level::Dp] = kLandeD * 1.5 * unit;
  z[level::Pm] = kLandeP * -0.5 * unit;
  z[level::Pp] = kLandeP * 0.5 * unit;
  return z;
}

}  // namespace ioncavity::model
