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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "ioncavity/control/gates.hpp"
#include "ioncavity/control/preparation.hpp"
#include "ioncavity/error.hpp"
#include "ioncavity/model/levels.hpp"

namespace ioncavity::control {
namespace {

using qcore::Complex;
using qcore::DenseMatrix;
using qcore::DensityMatrix;
using qcore::HilbertSpace;
using qcore::StateVector;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Closed-form spin populations of the Lamb-Dicke MS interaction from
// |S,S,0>: motion displaced by s*alpha(t) for collective X eigenvalue s,
// with the geometric phase Phi(t) s^2.
SpinPopulations ms_closed_form(const GateParams& g, double t) {
  const double f = 0.5 * kTwoPi * g.sideband_rabi();
  const double d = kTwoPi * g.delta_MS;
  const double alpha2 = std::norm(f / d * (std::exp(Complex(0.0, d * t)) - 1.0));
  const double phi = f * f / d * (t - std::sin(d * t) / d);
  // Single-ion X eigenstates: <S|+> = <D|+> = <S|-> = 1/sqrt2, <D|-> = -1/sqrt2.
  auto amp = [](int level, int sigma) { return (level == 1 && sigma < 0 ? -1.0 : 1.0) / std::sqrt(2.0); };
  std::array<std::array<double, 2>, 2> pop{};
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) {
      Complex acc = 0.0;
      for (int a1 : {1, -1}) for (int a2 : {1, -1}) for (int b1 : {1, -1}) for (int b2 : {1, -1}) {
        const int s = a1 + a2, sp = b1 + b2;
        const Complex rho = 0.25 * std::exp(Complex(0.0, phi * (s * s - sp * sp))) *
                            std::exp(-0.5 * alpha2 * (s - sp) * (s - sp));
        acc += amp(l1, a1) * amp(l2, a2) * rho * amp(l1, b1) * amp(l2, b2);
      }
      pop[l1][l2] = acc.real();
    }
  }
  return {pop[0][0], pop[1][1], pop[0][1], pop[1][0]};
}

TEST(MsGate, MatchesClosedForm) {
  GateParams g;
  g.n_motional_max = 14;
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(g.gate_time() * i / 40.0);
  const auto r = ms_gate_evolution(g, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto c = ms_closed_form(g, times[i]);
    EXPECT_NEAR(r.p_SS[i], c.p_SS, 1e-6) << times[i];
    EXPECT_NEAR(r.p_DD[i], c.p_DD, 1e-6) << times[i];
    EXPECT_NEAR(r.p_mixed[i], c.mixed(), 1e-6) << times[i];
  }
}

TEST(MsGate, EntanglesAtLoopClosure) {
  const GateParams g;
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(g.gate_time() * i / 100.0);
  const auto r = ms_gate_evolution(g, times);
  EXPECT_NEAR(r.p_SS.front(), 1.0, 1e-15);
  EXPECT_GE(ms_bell_fidelity(r.final_state), 0.999);
  EXPECT_NEAR(r.p_SS.back(), 0.5, 2e-3);
  EXPECT_NEAR(r.p_DD.back(), 0.5, 2e-3);
  EXPECT_LT(r.p_mixed.back(), 1e-3);
  for (double top : r.top_fock_population) EXPECT_LT(top, 1e-3);
  const auto peak = std::max_element(r.p_mixed.begin(), r.p_mixed.end()) - r.p_mixed.begin();
  EXPECT_NEAR(times[static_cast<std::size_t>(peak)], 0.5 * g.gate_time(), 0.05 * g.gate_time());
}

TEST(MsGate, MotionDisentanglesWithWideCutoff) {
  GateParams g;
  g.n_motional_max = 14;
  const std::vector<double> times{0.0, g.gate_time()};
  const auto r = ms_gate_evolution(g, times);
  EXPECT_LE(qcore::von_neumann_entropy(ms_spin_state(r.final_state)), 1e-4);
}

TEST(MsGate, TruncationOverflowThrows) {
  GateParams g;
  g.eta_Omega = 4.0 * g.delta_MS;
  g.n_motional_max = 2;
  const std::vector<double> times{0.0, g.gate_time()};
  EXPECT_THROW(ms_gate_evolution(g, times), NumericalError);
}

std::vector<double> phase_grid(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return v;
}

TEST(Parity, BellStateFullAmplitude) {
  const auto rho = DensityMatrix::pure(bell_phi_qubits());
  const auto phases = phase_grid(32);
  const auto p = parity_scan(rho, phases);
  EXPECT_NEAR(fidelity_bound(phases, p), 1.0, 1e-3);
  EXPECT_LT(fit_parity(phases, p).rms_residual, 1e-12);
}

TEST(Parity, MixedStateIsFlat) {
  const auto phases = phase_grid(16);
  for (double v : parity_scan(DensityMatrix::maximally_mixed(HilbertSpace{2, 2}), phases)) {
    EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(Parity, DepolarizedBoundBelowFidelity) {
  const auto bell = bell_phi_qubits();
  const auto rho = DensityMatrix::pure(bell).mixed_with(DensityMatrix::maximally_mixed(HilbertSpace{2, 2}),
                                                       0.05 * 4.0 / 3.0);
  const double f = qcore::fidelity(rho, bell);
  EXPECT_NEAR(f, 0.95, 1e-12);
  const auto phases = phase_grid(24);
  const double a = fidelity_bound(phases, parity_scan(rho, phases));
  EXPECT_LE(a, f + 0.01);
}

TEST(Parity, GlobalPhaseInvariant) {
  const auto psi = bell_phi_qubits();
  const auto phases = phase_grid(12);
  const auto a = parity_scan(DensityMatrix::pure(psi), phases);
  const auto b = parity_scan(DensityMatrix::pure(std::exp(Complex(0.0, 1.3)) * psi), phases);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(Parity, FitNeedsEightSamples) {
  const auto phases = phase_grid(6);
  const std::vector<double> y(6, 0.0);
  EXPECT_THROW(fit_parity(phases, y), ConfigError);
}

TEST(Stark, ComposesAdditivelyAndIsPeriodic) {
  const GateParams g;
  const auto rho = global_rotation(DensityMatrix::pure(StateVector::basis(HilbertSpace{2, 2}, {0, 0})), kPi / 2, 0.3);
  const auto ab = stark_phase_gate(stark_phase_gate(rho, 1.1e-6, g), 0.7e-6, g);
  const auto sum = stark_phase_gate(rho, 1.8e-6, g);
  EXPECT_LT((ab.matrix() - sum.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((stark_phase_gate(rho, 0.0, g).matrix() - rho.matrix()).norm(), 1e-15);
  const auto full = stark_phase_gate(rho, g.stark_period, g);
  EXPECT_LT((full.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(stark_phase_gate(rho, -1e-6, g), ConfigError);
}

TEST(Stark, RamseyHalfPeriodAndPeriod) {
  const GateParams g;
  const std::vector<double> half{0.5 * g.stark_period};
  const auto p = stark_ramsey(g, half).front().pops;
  EXPECT_NEAR(p.p_SD, 1.0, 1e-3);
  std::vector<double> taus, y;
  for (int i = 0; i <= 200; ++i) taus.push_back(2.0 * g.stark_period * i / 200.0);
  for (const auto& pt : stark_ramsey(g, taus)) y.push_back(pt.pops.p_SD);
  EXPECT_NEAR(oscillation_period(taus, y, g.stark_period / 4, 2 * g.stark_period), g.stark_period,
              0.01 * g.stark_period);
}

TEST(Stark, OscillationPeriodSynthetic) {
  std::vector<double> t, y;
  for (int i = 0; i < 60; ++i) {
    t.push_back(i * 0.1);
    y.push_back(0.3 + 0.2 * std::cos(kTwoPi * t.back() / 1.7 + 0.4));
  }
  EXPECT_NEAR(oscillation_period(t, y, 0.5, 5.0), 1.7, 1e-6);
  EXPECT_THROW(oscillation_period(std::span(t).first(3), std::span(y).first(3), 0.5, 5.0), ConfigError);
}

TEST(Prepare, PsiPhiIdealAndNoisy) {
  model::PhysicalParams p;
  const double phi = 0.8;
  const auto psi = (ion_pair_ket(model::level::S, model::level::D) +
                    std::exp(Complex(0.0, phi)) * ion_pair_ket(model::level::D, model::level::S))
                       .normalized();
  const auto ideal = prepare_psi_phi(phi, p, false);
  EXPECT_NEAR(qcore::fidelity(ideal.rho, psi), 1.0, 1e-12);
  const auto noisy = prepare_psi_phi(phi, p, true);
  EXPECT_NEAR(qcore::fidelity(noisy.rho, psi), 0.95, 1e-12);
  EXPECT_LT(noisy.rho.purity(), 1.0);
  const auto ss = noisy.rho.population(ion_pair_space().flatten(std::vector<std::size_t>{0, 0}));
  const auto dd = noisy.rho.population(ion_pair_space().flatten(std::vector<std::size_t>{2, 2}));
  EXPECT_NEAR(ss, 0.025, 1e-12);
  EXPECT_NEAR(dd, 0.025, 1e-12);
  const auto wrapped = prepare_psi_phi(phi + kTwoPi, p, true);
  EXPECT_LT((wrapped.rho.matrix() - noisy.rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Prepare, SingleIonAndSuperposition) {
  model::PhysicalParams p;
  const auto s1 = prepare_single_ion(1, p, false);
  EXPECT_NEAR(qcore::fidelity(s1.rho, ion_pair_ket(model::level::S, model::level::Dp)), 1.0, 1e-12);
  const auto s2 = prepare_single_ion(2, p, true);
  EXPECT_NEAR(qcore::fidelity(s2.rho, ion_pair_ket(model::level::Dp, model::level::S)), 0.95, 1e-12);
  const auto same = prepare_superposition(0.0, 0.0, s1);
  EXPECT_LT((same.rho.matrix() - s1.rho.matrix()).norm(), 1e-15);
  const auto flipped = prepare_superposition(kPi / 2, 0.0, s1);
  EXPECT_NEAR(qcore::fidelity(flipped.rho, ion_pair_ket(model::level::Sp, model::level::Dp)), 1.0, 1e-12);
  EXPECT_TRUE(superposition_unitary(0.4, 1.1, 4).is_unitary());
}

TEST(Gates, TracePurityPreserved) {
  const auto rho = DensityMatrix::pure(bell_phi_qubits());
  const auto out = global_rotation(rho, 0.37, 1.2);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  EXPECT_NEAR(out.purity(), 1.0, 1e-10);
  EXPECT_TRUE(sd_rotation(0.5, 0.2, 4).is_unitary());
}

TEST(Gates, Validation) {
  GateParams g;
  g.delta_MS = 0.0;
  EXPECT_THROW(g.validate(), ConfigError);
  g = GateParams{};
  g.n_motional_max = 1;
  EXPECT_THROW(g.validate(), ConfigError);
  EXPECT_DOUBLE_EQ(GateParams{}.sideband_rabi(), 0.5 * 18.2e3);
}

}  // namespace
}  // namespace ioncavity::control
