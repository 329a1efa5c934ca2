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

#include <numbers>
#include <optional>
#include <string>

namespace ioncavity::model {

// Frequencies are ordinary frequencies in Hz; builders apply 2*pi.
// Times in seconds, angles in radians, field in gauss.
struct PhysicalParams {
  double g_PD = 1e6;
  double kappa = 50e3;
  double gamma = 11.5e6;
  double branching_PS = 0.935;
  // Share of the P->S decay that returns to the same Zeeman sublevel.
  double branching_same_sublevel = 2.0 / 3.0;
  double Omega_SD = 19e6;
  double Omega_SpD = 9.5e6;
  double Delta = 400e6;
  double B = 4.5;
  double ion_separation = 5.6e-6;
  double raman_angle = std::numbers::pi / 4.0;
  double raman_wavelength = 393e-9;
  double laser_linewidth = 30e3;
  // Unset: derived from the geometry via raman_phase().
  std::optional<double> zeta;

  // Geometric (Clebsch-Gordan and polarization) factors of the Raman
  // transitions. xi_SD reproduces an 18 kHz single-ion coupling at the
  // default drive; xi_SpD is half of it so that a doubled S'->D tone balances.
  double xi_SD = 0.7579;
  double xi_SpD = 0.37895;
  // In the two-tone drive the larger of Omega_SD/Omega_SpD goes to S'->D.
  bool larger_tone_on_SpD = true;

  // g_weak / g_strong, applied to `weaker_ion` (1 or 2).
  double coupling_asymmetry = 0.90;
  int weaker_ion = 1;

  double tau_SSp = 190e-6;
  double tau_SD = 475e-6;
  double detection_efficiency = 0.08;
  double dark_rate_1 = 3.2;
  double dark_rate_2 = 3.8;
  double prep_error_SS_DD = 0.05;
  // Population left in |S>|S> when preparing the single-ion states.
  double prep_error_single = 0.05;
  double coherence_scale = 0.96;

  // Throws ConfigError naming the first offending field.
  void validate() const;

  // Noise-free variant: equal couplings, no scattering (gamma = 0), perfect
  // preparation, no linewidth, no coherence scaling, no dark counts.
  PhysicalParams ideal() const;

  double dark_rate_total() const { return dark_rate_1 + dark_rate_2; }
  // Coupling weight of ion 1 or 2 (1.0 or coupling_asymmetry).
  double coupling_weight(int ion) const;
};

enum class DriveMode { monochromatic, bichromatic };

std::string to_string(DriveMode mode);
DriveMode drive_mode_from_string(const std::string& name);

}  // namespace ioncavity::model
