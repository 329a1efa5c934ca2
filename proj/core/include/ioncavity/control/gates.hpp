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
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "ioncavity/qcore/state.hpp"

namespace ioncavity::control {

struct GateParams {
  double delta_MS = 18.2e3;           // Hz
  std::optional<double> eta_Omega;    // Hz; unset means delta_MS / 2
  std::size_t n_motional_max = 6;
  double stark_delta = 10e6;          // Hz
  double stark_Omega = 8.6e6;         // Hz
  double stark_period = 5.3e-6;       // s
  int stark_addressed_ion = 1;

  void validate() const;
  double sideband_rabi() const { return eta_Omega ? *eta_Omega : 0.5 * delta_MS; }
  double gate_time() const { return 1.0 / delta_MS; }
};

// Analysis phase at which the pi/2 pulse maps (|SS> + i|DD>)/sqrt(2) to
// (|SD> + |DS>)/sqrt(2) in this library's rotation convention.
inline constexpr double kPsiPlusAnalysisPhase = std::numbers::pi / 4.0;

// Index of S and D inside an ion factor of dimension 2 (S, D) or >= 4.
std::size_t s_index(std::size_t ion_levels);
std::size_t d_index(std::size_t ion_levels);

// exp(-i theta/2 (cos(phi) X + sin(phi) Y)) on the S/D pair, identity on
// the other levels.
qcore::Operator sd_rotation(double theta, double phi, std::size_t ion_levels);
// Same rotation on both ions of a two-ion state.
qcore::DensityMatrix global_rotation(const qcore::DensityMatrix& rho, double theta, double phi);

struct SpinPopulations {
  double p_SS = 0.0;
  double p_DD = 0.0;
  double p_SD = 0.0;  // ion1 in S, ion2 in D
  double p_DS = 0.0;
  double mixed() const { return p_SD + p_DS; }
  double parity() const { return p_SS + p_DD - p_SD - p_DS; }
};
// Fluorescence readout: S-manifold (S, S') vs D-manifold (D, D') per ion.
SpinPopulations spin_populations(const qcore::DensityMatrix& rho);

struct MsGateResult {
  std::vector<double> times;
  std::vector<double> p_SS;
  std::vector<double> p_DD;
  std::vector<double> p_mixed;
  std::vector<double> top_fock_population;
  qcore::StateVector final_state;  // [2,2,n_max+1], S=0, D=1
};

// Lamb-Dicke interaction picture,
// H = (eta*Omega/2)(X1 + X2)(a e^{-i delta t} + h.c.), from |S,S,0>.
// Throws NumericalError when the top Fock population exceeds 1e-3.
MsGateResult ms_gate_evolution(const GateParams& params, std::span<const double> t_grid);

// Spin state (traced over motion) on [2,2] and fidelity with
// (|SS> + i|DD>)/sqrt(2).
qcore::DensityMatrix ms_spin_state(const qcore::StateVector& final_state);
double ms_bell_fidelity(const qcore::StateVector& final_state);
qcore::StateVector bell_phi_qubits();

std::vector<double> parity_scan(const qcore::DensityMatrix& rho, std::span<const double> phases);

struct ParityFit {
  double amplitude = 0.0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
  double offset = 0.0;
  double rms_residual = 0.0;
};
// Least-squares fit of P(phi) = a cos 2phi + b sin 2phi + c.
ParityFit fit_parity(std::span<const double> phases, std::span<const double> parity);
// Amplitude of the parity oscillation, a lower bound on the Bell fidelity.
double fidelity_bound(std::span<const double> phases, std::span<const double> parity);

// Phase 2*pi*duration/stark_period on the addressed ion's |D> amplitude.
qcore::DensityMatrix stark_phase_gate(const qcore::DensityMatrix& rho, double duration,
                                      const GateParams& params);

struct RamseyPoint {
  double tau = 0.0;
  SpinPopulations pops;
};
// |S>|S>, global pi/2, Stark pulse tau, global pi/2 with the same phase.
std::vector<RamseyPoint> stark_ramsey(const GateParams& params, std::span<const double> taus);

// Period of y(t) ~ a + b cos(2 pi t/T) + c sin(2 pi t/T), by least squares
// over T in [period_min, period_max]. Throws on fewer than 5 samples.
double oscillation_period(std::span<const double> t, std::span<const double> y, double period_min,
                          double period_max);

}  // namespace ioncavity::control
