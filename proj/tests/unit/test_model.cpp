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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ioncavity/error.hpp"
#include "ioncavity/model/builders.hpp"
#include "ioncavity/model/rates.hpp"

namespace ioncavity::model {
namespace {

using qcore::Complex;
using qcore::HilbertSpace;
using qcore::StateVector;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(RamanPhase, LimitsAndDefault) {
  PhysicalParams p;
  p.ion_separation = 0.0;
  EXPECT_NEAR(raman_phase(p), 0.0, 1e-15);
  p.ion_separation = p.raman_wavelength / std::sin(p.raman_angle);
  const double z = raman_phase(p);
  EXPECT_LT(std::min(z, kTwoPi - z), 1e-9);
  p = PhysicalParams{};
  // 2*pi*10.0758...
  EXPECT_NEAR(raman_phase(p), 0.4764, 5e-3);
  p.zeta = 1.25;
  EXPECT_DOUBLE_EQ(zeta_of(p), 1.25);
}

TEST(EffectiveRates, DefaultValues) {
  PhysicalParams p;
  const auto r = effective_rates(p, p.xi_SD);
  EXPECT_NEAR(r.gamma_eff, 11.5e6 * std::pow(19.0 / 800.0, 2), 1e-6);
  EXPECT_NEAR(r.gamma_eff, 6.5e3, 0.05e3);
  EXPECT_NEAR(r.g, 18e3, 5.0);
  EXPECT_NEAR(calibrate_xi(p, 18e3), 0.758, 1e-3);
  const auto zero = effective_rates(0.0, p, p.xi_SD);
  EXPECT_EQ(zero.g, 0.0);
  EXPECT_EQ(zero.gamma_eff, 0.0);
  p.Delta = 0.0;
  EXPECT_THROW(effective_rates(p, p.xi_SD), ConfigError);
}

TEST(EffectiveRates, DetuningWarning) {
  PhysicalParams p;
  EXPECT_FALSE(detuning_warning(p.Omega_SD, p));
  p.Delta = 4.0 * p.Omega_SD;
  EXPECT_TRUE(detuning_warning(p.Omega_SD, p));
}

TEST(Zeeman, Shifts) {
  PhysicalParams p;
  const auto z = zeeman_shifts(p);
  EXPECT_NEAR(z[level::S], -0.5 * 2.0023 * 1.3996e6 * 4.5, 1.0);
  EXPECT_NEAR(z[level::S], -6.30e6, 0.01e6);
  EXPECT_NEAR(z[level::Sp] - z[level::S], 12.6e6, 0.02e6);
  p.B = 0.0;
  for (double v : zeeman_shifts(p)) EXPECT_EQ(v, 0.0);
}

TEST(DarkState, AlgebraRandomPhases) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  const double g = kTwoPi * 18e3;
  const HilbertSpace s{2, 2, 2};
  for (int k = 0; k < 10; ++k) {
    const double zeta = u(rng);
    const auto h = effective_interaction_minimal(g, 1.0, zeta);
    const auto sd = StateVector::basis(s, {0, 1, 0}), ds = StateVector::basis(s, {1, 0, 0});
    const Complex ph = std::exp(Complex(0.0, -zeta));
    const auto sub = (sd - ph * ds).normalized();
    const auto sup = (sd + ph * ds).normalized();
    EXPECT_LT(qcore::apply(h, sub).norm(), 1e-12 * g);
    EXPECT_NEAR(qcore::apply(h, sup).norm(), std::sqrt(2.0) * g, 1e-10 * g);
  }
}

TEST(EffectiveModel, HermitianAndExchangeSymmetric) {
  PhysicalParams p;
  p.coupling_asymmetry = 1.0;
  p.zeta = 0.9;
  const auto a = build_effective_model(p).hamiltonian.dense();
  p.zeta = -0.9;
  const auto b = build_effective_model(p).hamiltonian.dense();
  EXPECT_LT((a - a.adjoint()).norm(), 1e-10 * a.norm());
  // Exchange the two ion factors of b.
  const HilbertSpace s = build_effective_model(p).space;
  qcore::DenseMatrix swap = qcore::DenseMatrix::Zero(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    auto d = s.unflatten(i);
    std::swap(d[0], d[1]);
    swap(s.flatten(d), i) = 1.0;
  }
  const qcore::DenseMatrix bx = swap * b * swap.adjoint();
  Eigen::SelfAdjointEigenSolver<qcore::DenseMatrix> ea(a), eb(bx);
  EXPECT_LT((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10 * a.norm());
}

TEST(EffectiveModel, Spaces) {
  PhysicalParams p;
  EXPECT_EQ(build_effective_model(p).space, (HilbertSpace{4, 4, 3}));
  EffectiveModelOptions o;
  o.mode = DriveMode::bichromatic;
  const auto m = build_effective_model(p, o);
  EXPECT_EQ(m.space, (HilbertSpace{4, 4, 3, 3}));
  EXPECT_EQ(m.num_modes, 2u);
}

TEST(FullModel, HermitianAndDecayBookkeeping) {
  PhysicalParams p;
  const auto m = build_full_model(p, DriveMode::bichromatic);
  EXPECT_EQ(m.space, (HilbertSpace{6, 6, 3, 3}));
  EXPECT_TRUE(m.hamiltonian.is_hermitian(1e-10 * m.hamiltonian.norm()));
  for (const std::string src : {"Pm", "Pp"}) {
    double to_s = 0.0, to_d = 0.0;
    for (const auto& c : m.collapse) {
      if (c.name.rfind("decay_ion1_" + src + "_", 0) != 0) continue;
      EXPECT_GE(c.rate, 0.0);
      (c.name.back() == 'D' ? to_d : to_s) += c.rate;
    }
    EXPECT_NEAR(to_s + to_d, kTwoPi * p.gamma, 1e-6);
    EXPECT_NEAR(to_s / (to_s + to_d), p.branching_PS, 1e-12);
  }
}

TEST(FullModel, NoDriveNoFieldDarkState) {
  PhysicalParams p;
  p.Omega_SD = 0.0;
  p.Omega_SpD = 0.0;
  p.B = 0.0;
  p.coupling_asymmetry = 1.0;
  FullModelOptions o;
  o.compensate_light_shifts = false;
  const auto m = build_full_model(p, DriveMode::monochromatic, o);
  // (|Pm,D> - |D,Pm>)/sqrt(2) with vacuum is dark for the cavity terms with
  // the adjacent-antinode sign.
  const auto a = StateVector::basis(m.space, {level::Pm, level::D, 0, 0});
  const auto b = StateVector::basis(m.space, {level::D, level::Pm, 0, 0});
  const auto plus = (a + b).normalized();
  const auto minus = (a - b).normalized();
  // Coupling out of the state; the diagonal frame energy is removed.
  auto leak = [&](const StateVector& v) {
    const Eigen::VectorXcd hv = qcore::apply(m.hamiltonian, v).amplitudes();
    return (hv - v.amplitudes().dot(hv) * v.amplitudes()).norm();
  };
  const double n_plus = leak(plus), n_minus = leak(minus);
  EXPECT_LT(std::min(n_plus, n_minus), 1e-9 * std::max(n_plus, n_minus));
  EXPECT_NEAR(std::max(n_plus, n_minus), std::sqrt(2.0) * kTwoPi * p.xi_SD * p.g_PD, 1e-6 * kTwoPi * p.g_PD);
}

TEST(Params, Validation) {
  PhysicalParams p;
  EXPECT_NO_THROW(p.validate());
  p.branching_PS = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = PhysicalParams{};
  p.detection_efficiency = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = PhysicalParams{};
  p.coupling_asymmetry = 1.1;
  EXPECT_THROW(p.validate(), ConfigError);
  const auto ideal = PhysicalParams{}.ideal();
  EXPECT_EQ(ideal.coupling_asymmetry, 1.0);
  EXPECT_EQ(ideal.prep_error_SS_DD, 0.0);
}

TEST(QubitLabels, CountsExcitations) {
  const HilbertSpace s{4, 4, 3, 3};
  const auto labels = qubit_labels(s, 4);
  EXPECT_EQ(labels[s.flatten(std::vector<std::size_t>{level::S, level::D, 0, 0})], 64);
  EXPECT_EQ(labels[s.flatten(std::vector<std::size_t>{level::Sp, level::D, 0, 0})], 1);
  EXPECT_EQ(labels[s.flatten(std::vector<std::size_t>{level::D, level::D, 1, 0})], 64);
  EXPECT_EQ(labels[s.flatten(std::vector<std::size_t>{level::D, level::D, 0, 1})], 1);
}

}  // namespace
}  // namespace ioncavity::model
