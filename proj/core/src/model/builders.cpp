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

#include "ioncavity/model/builders.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "ioncavity/control/preparation.hpp"
#include "ioncavity/error.hpp"
#include "ioncavity/model/rates.hpp"

namespace ioncavity::model {

using qcore::Complex;
using qcore::DenseMatrix;
using qcore::HilbertSpace;
using qcore::Operator;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

HilbertSpace make_space(std::size_t ion_levels, std::size_t num_modes, std::size_t cutoff) {
  std::vector<std::size_t> f = {ion_levels, ion_levels};
  for (std::size_t m = 0; m < num_modes; ++m) f.push_back(cutoff + 1);
  return HilbertSpace(std::move(f));
}

Operator ion_op(const HilbertSpace& space, std::size_t ion, std::size_t to, std::size_t from) {
  return qcore::embed(qcore::transition(space.factor(ion), to, from), ion, space);
}

void add_channel(LindbladModel& m, std::string name, Operator op, double rate) {
  if (rate > 0.0) m.collapse.push_back({std::move(name), std::move(op), rate});
}

std::string ion_tag(std::size_t ion) { return ion == 0 ? "ion1" : "ion2"; }

// Scattering out of `src` (S or S') with total angular rate `rate`.
void add_scattering(LindbladModel& m, const PhysicalParams& p, std::size_t ion, std::size_t src,
                    double rate, const char* src_name) {
  const std::size_t same = src;
  const std::size_t other = src == level::S ? level::Sp : level::S;
  const double to_s = p.branching_PS;
  add_channel(m, "scatter_" + ion_tag(ion) + "_" + src_name + "_same",
              ion_op(m.space, ion, same, src), rate * to_s * p.branching_same_sublevel);
  add_channel(m, "scatter_" + ion_tag(ion) + "_" + src_name + "_flip",
              ion_op(m.space, ion, other, src), rate * to_s * (1.0 - p.branching_same_sublevel));
  add_channel(m, "scatter_" + ion_tag(ion) + "_" + src_name + "_to_D",
              ion_op(m.space, ion, level::D, src), rate * (1.0 - to_s));
}

void add_cavity_decay(LindbladModel& m, const PhysicalParams& p) {
  // Field decay kappa; the jump operator sqrt(2 kappa) a.
  for (std::size_t k = 0; k < m.num_modes; ++k) {
    add_channel(m, k == 0 ? "cavity_H" : "cavity_V", m.photon_annihilation(k),
                2.0 * kTwoPi * p.kappa);
  }
}

void add_laser_dephasing(LindbladModel& m, const PhysicalParams& p) {
  // Collective: both ions see the same laser phase.
  Operator n_s = qcore::zero(m.space);
  for (std::size_t ion = 0; ion < 2; ++ion) {
    n_s += m.ion_projector(ion, level::S) + m.ion_projector(ion, level::Sp);
  }
  add_channel(m, "laser_dephasing", n_s, kTwoPi * p.laser_linewidth);
}

}  // namespace

void LindbladModel::validate(double hermitian_tol) const {
  qcore::require_same_space(space, hamiltonian.space(), "LindbladModel hamiltonian");
  if (!hamiltonian.is_hermitian(hermitian_tol)) {
    throw NumericalError("LindbladModel: Hamiltonian is not Hermitian");
  }
  for (const auto& c : collapse) {
    qcore::require_same_space(space, c.op.space(), "LindbladModel collapse operator");
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) {
      throw NumericalError("LindbladModel: collapse channel '" + c.name + "' has invalid rate");
    }
  }
}

Operator LindbladModel::photon_annihilation(std::size_t mode) const {
  if (mode >= num_modes) throw DimensionError("photon_annihilation: no mode " + std::to_string(mode));
  const std::size_t s = 2 + mode;
  return qcore::embed(qcore::annihilation(space.factor(s) - 1), s, space);
}

Operator LindbladModel::photon_number(std::size_t mode) const {
  const Operator a = photon_annihilation(mode);
  return a.adjoint() * a;
}

Operator LindbladModel::ion_projector(std::size_t ion, std::size_t lvl) const {
  if (ion > 1) throw DimensionError("ion_projector: ion index must be 0 or 1");
  return ion_op(space, ion, lvl, lvl);
}

LindbladModel build_effective_model(const PhysicalParams& params,
                                    const EffectiveModelOptions& options) {
  params.validate();
  if (options.photon_cutoff < 1) throw ConfigError("effective model: photon_cutoff must be >= 1");
  LindbladModel m;
  m.num_modes = options.mode == DriveMode::monochromatic ? 1 : 2;
  m.ion_levels = kEffectiveIonLevels;
  m.space = make_space(kEffectiveIonLevels, m.num_modes, options.photon_cutoff);

  const ToneAssignment tones = tone_assignment(params, options.mode);
  const double g_H = kTwoPi * effective_rates(tones.Omega_H, params, params.xi_SD).g;
  const double g_V = kTwoPi * effective_rates(tones.Omega_V, params, params.xi_SpD).g;
  const double zeta = zeta_of(params);
  const Complex c[2] = {params.coupling_weight(1),
                        params.coupling_weight(2) * std::exp(Complex(0.0, zeta))};

  Operator h = qcore::zero(m.space);
  const Operator ad = m.photon_annihilation(0).adjoint();
  for (std::size_t ion = 0; ion < 2; ++ion) {
    h += (c[ion] * g_H) * (ion_op(m.space, ion, level::D, level::S) * ad);
    if (m.num_modes == 2) {
      const Operator bd = m.photon_annihilation(1).adjoint();
      h += (c[ion] * g_V) * (ion_op(m.space, ion, level::D, level::Sp) * bd);
    }
  }
  m.hamiltonian = h + h.adjoint();

  add_cavity_decay(m, params);
  if (options.scattering) {
    const double rate_S = kTwoPi * effective_rates(tones.Omega_H, params, params.xi_SD).gamma_eff;
    const double rate_Sp = kTwoPi * effective_rates(tones.Omega_V, params, params.xi_SpD).gamma_eff;
    for (std::size_t ion = 0; ion < 2; ++ion) {
      add_scattering(m, params, ion, level::S, rate_S, "S");
      add_scattering(m, params, ion, level::Sp, rate_Sp, "Sp");
    }
  }
  if (options.laser_dephasing) add_laser_dephasing(m, params);
  m.validate();
  return m;
}

Operator effective_interaction_minimal(double g_angular, double asym, double zeta) {
  const HilbertSpace space{2, 2, 2};
  const Operator ad = qcore::embed(qcore::creation(1), 2, space);
  const Operator s1 = qcore::embed(qcore::transition(2, 1, 0), 0, space);
  const Operator s2 = qcore::embed(qcore::transition(2, 1, 0), 1, space);
  Operator h = g_angular * ((s1 + (asym * std::exp(Complex(0.0, zeta))) * s2) * ad);
  return h + h.adjoint();
}

EffectiveSetup build_effective_model(const PhysicalParams& params, double phi, bool noisy) {
  EffectiveSetup setup{build_effective_model(params, EffectiveModelOptions{}), {}};
  const auto prepared = control::prepare_psi_phi(phi, params, noisy);
  setup.initial = with_cavity_vacuum(prepared.rho, setup.model.space);
  return setup;
}

LindbladModel build_full_model(const PhysicalParams& params, DriveMode mode,
                               const FullModelOptions& options) {
  params.validate();
  if (options.photon_cutoff < 1) throw ConfigError("full model: photon_cutoff must be >= 1");
  const ToneAssignment tones = tone_assignment(params, mode);
  if (mode == DriveMode::monochromatic && tones.Omega_V != 0.0) {
    throw ConfigError("full model: monochromatic drive cannot carry an S'->D tone");
  }
  if (mode == DriveMode::bichromatic && (tones.Omega_H == 0.0 || tones.Omega_V == 0.0)) {
    throw ConfigError("full model: bichromatic drive needs both tones nonzero");
  }

  LindbladModel m;
  m.num_modes = 2;
  m.ion_levels = kFullIonLevels;
  m.space = make_space(kFullIonLevels, 2, options.photon_cutoff);

  const auto zee = zeeman_shifts(params);
  const double delta_m = kTwoPi * params.Delta;
  const double delta_p = kTwoPi * (params.Delta + zee[level::Pp] - zee[level::Pm]);
  const double gH = kTwoPi * params.xi_SD * params.g_PD;
  const double gV = kTwoPi * params.xi_SpD * params.g_PD;
  const double half_H = 0.5 * kTwoPi * tones.Omega_H;
  const double half_V = 0.5 * kTwoPi * tones.Omega_V;

  // Frame energies. D carries the two-photon detuning that cancels the
  // differential light shift of |S,0> and |D,1>; S' likewise for the V tone.
  double e_D = 0.0;
  double e_Sp = kTwoPi * (zee[level::Sp] - zee[level::S]);
  if (options.compensate_light_shifts) {
    e_D = (gH * gH - half_H * half_H) / delta_m;
  }
  if (mode == DriveMode::bichromatic) {
    e_Sp = options.compensate_light_shifts
               ? e_D - gV * gV / delta_p + half_V * half_V / delta_p
               : 0.0;
  }
  const double e_Dp = kTwoPi * (zee[level::Dp] - zee[level::D]);

  const double zeta = zeta_of(params);
  // Adjacent antinodes: opposite sign of the cavity field at the two ions.
  const double c[2] = {params.coupling_weight(1), -params.coupling_weight(2)};
  const double drive_phase[2] = {zeta, 0.0};

  Operator h = qcore::zero(m.space);
  const Operator ad = m.photon_annihilation(0).adjoint();
  const Operator bd = m.photon_annihilation(1).adjoint();
  for (std::size_t ion = 0; ion < 2; ++ion) {
    h += delta_m * m.ion_projector(ion, level::Pm);
    h += delta_p * m.ion_projector(ion, level::Pp);
    h += e_D * m.ion_projector(ion, level::D);
    h += e_Sp * m.ion_projector(ion, level::Sp);
    h += e_Dp * m.ion_projector(ion, level::Dp);

    Operator coupling = (c[ion] * gH) * (ion_op(m.space, ion, level::D, level::Pm) * ad);
    coupling += (c[ion] * gV) * (ion_op(m.space, ion, level::D, level::Pp) * bd);
    const Complex ph = std::exp(Complex(0.0, drive_phase[ion]));
    coupling += (half_H * ph) * ion_op(m.space, ion, level::Pm, level::S);
    if (half_V != 0.0) coupling += (half_V * ph) * ion_op(m.space, ion, level::Pp, level::Sp);
    h += coupling + coupling.adjoint();
  }
  m.hamiltonian = h;

  add_cavity_decay(m, params);
  const double g_tot = kTwoPi * params.gamma;
  const double to_s = params.branching_PS;
  const double same = params.branching_same_sublevel;
  for (std::size_t ion = 0; ion < 2; ++ion) {
    const std::string t = ion_tag(ion);
    add_channel(m, "decay_" + t + "_Pm_S", ion_op(m.space, ion, level::S, level::Pm),
                g_tot * to_s * same);
    add_channel(m, "decay_" + t + "_Pm_Sp", ion_op(m.space, ion, level::Sp, level::Pm),
                g_tot * to_s * (1.0 - same));
    add_channel(m, "decay_" + t + "_Pm_D", ion_op(m.space, ion, level::D, level::Pm),
                g_tot * (1.0 - to_s));
    add_channel(m, "decay_" + t + "_Pp_Sp", ion_op(m.space, ion, level::Sp, level::Pp),
                g_tot * to_s * same);
    add_channel(m, "decay_" + t + "_Pp_S", ion_op(m.space, ion, level::S, level::Pp),
                g_tot * to_s * (1.0 - same));
    add_channel(m, "decay_" + t + "_Pp_D", ion_op(m.space, ion, level::D, level::Pp),
                g_tot * (1.0 - to_s));
  }
  if (options.laser_dephasing) add_laser_dephasing(m, params);
  m.validate();
  return m;
}

double effective_phase_from_full(double zeta_full) {
  double z = std::numbers::pi - zeta_full;
  z = std::fmod(z, kTwoPi);
  if (z < 0.0) z += kTwoPi;
  return z;
}

qcore::DensityMatrix with_cavity_vacuum(const qcore::DensityMatrix& ions,
                                        const HilbertSpace& space) {
  const auto& f = ions.space().factors();
  if (f.size() != 2 || space.num_factors() < 2 || f[0] != space.factor(0) ||
      f[1] != space.factor(1)) {
    throw DimensionError("with_cavity_vacuum: ion space " + ions.space().to_string() +
                         " does not match " + space.to_string());
  }
  std::vector<std::size_t> modes(space.factors().begin() + 2, space.factors().end());
  const HilbertSpace mode_space(modes);
  DenseMatrix vac = DenseMatrix::Zero(static_cast<Eigen::Index>(mode_space.dim()),
                                      static_cast<Eigen::Index>(mode_space.dim()));
  vac(0, 0) = 1.0;
  return qcore::tensor(ions, qcore::DensityMatrix(mode_space, vac));
}

std::vector<int> qubit_labels(const HilbertSpace& space, std::size_t ion_levels) {
  if (space.num_factors() < 2 || space.factor(0) != ion_levels || space.factor(1) != ion_levels) {
    throw DimensionError("qubit_labels: space " + space.to_string() + " does not hold two " +
                         std::to_string(ion_levels) + "-level ions");
  }
  std::vector<int> labels(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto d = space.unflatten(i);
    int h = 0;
    int v = 0;
    for (std::size_t ion = 0; ion < 2; ++ion) {
      if (d[ion] == level::S || (ion_levels > level::Pm && d[ion] == level::Pm)) ++h;
      if (d[ion] == level::Sp || (ion_levels > level::Pp && d[ion] == level::Pp)) ++v;
    }
    if (d.size() > 2) h += static_cast<int>(d[2]);
    if (d.size() > 3) v += static_cast<int>(d[3]);
    labels[i] = h * 64 + v;
  }
  return labels;
}

}  // namespace ioncavity::model
