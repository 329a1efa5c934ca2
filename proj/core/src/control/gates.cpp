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

#include "ioncavity/control/gates.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ioncavity/error.hpp"
#include "ioncavity/model/levels.hpp"

namespace ioncavity::control {

using qcore::Complex;
using qcore::DenseMatrix;
using qcore::DensityMatrix;
using qcore::HilbertSpace;
using qcore::Operator;
using qcore::StateVector;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTruncationLimit = 1e-3;
constexpr int kStepsPerGate = 8000;

bool is_s_manifold(std::size_t lvl, std::size_t ion_levels) {
  if (ion_levels == 2) return lvl == 0;
  return lvl == model::level::S || lvl == model::level::Sp || lvl == model::level::Pm ||
         lvl == model::level::Pp;
}

// Embeds single-ion operators on both ion slots; other factors identity.
Operator on_ions(const Operator& op1, const Operator& op2, const HilbertSpace& space) {
  return qcore::embed(op1, 0, space) * qcore::embed(op2, 1, space);
}

}  // namespace

void GateParams::validate() const {
  if (!(delta_MS > 0.0)) throw ConfigError("gate.delta_MS: must be > 0");
  if (n_motional_max < 2) throw ConfigError("gate.n_motional_max: must be >= 2");
  if (eta_Omega && !(*eta_Omega >= 0.0)) throw ConfigError("gate.eta_Omega: must be >= 0");
  if (!(stark_period > 0.0)) throw ConfigError("gate.stark_period: must be > 0");
  if (stark_addressed_ion != 1 && stark_addressed_ion != 2) {
    throw ConfigError("gate.stark_addressed_ion: must be 1 or 2");
  }
}

std::size_t s_index(std::size_t ion_levels) {
  if (ion_levels < 2) throw DimensionError("s_index: ion needs at least two levels");
  return 0;
}

std::size_t d_index(std::size_t ion_levels) {
  if (ion_levels == 2) return 1;
  if (ion_levels >= 4) return model::level::D;
  throw DimensionError("d_index: unsupported ion dimension " + std::to_string(ion_levels));
}

Operator sd_rotation(double theta, double phi, std::size_t ion_levels) {
  const auto n = static_cast<Eigen::Index>(ion_levels);
  const auto s = static_cast<Eigen::Index>(s_index(ion_levels));
  const auto d = static_cast<Eigen::Index>(d_index(ion_levels));
  DenseMatrix m = DenseMatrix::Identity(n, n);
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  m(s, s) = c;
  m(d, d) = c;
  m(s, d) = Complex(0.0, -1.0) * std::exp(Complex(0.0, -phi)) * sn;
  m(d, s) = Complex(0.0, -1.0) * std::exp(Complex(0.0, phi)) * sn;
  return Operator(HilbertSpace{ion_levels}, std::move(m));
}

DensityMatrix global_rotation(const DensityMatrix& rho, double theta, double phi) {
  const HilbertSpace& space = rho.space();
  if (space.num_factors() < 2) throw DimensionError("global_rotation: need two ions");
  const Operator u = on_ions(sd_rotation(theta, phi, space.factor(0)),
                             sd_rotation(theta, phi, space.factor(1)), space);
  return qcore::conjugate(u, rho);
}

SpinPopulations spin_populations(const DensityMatrix& rho) {
  const HilbertSpace& space = rho.space();
  if (space.num_factors() < 2) throw DimensionError("spin_populations: need two ions");
  SpinPopulations p;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const double w = rho.population(i);
    const bool s1 = is_s_manifold(space.digit(i, 0), space.factor(0));
    const bool s2 = is_s_manifold(space.digit(i, 1), space.factor(1));
    if (s1 && s2) p.p_SS += w;
    else if (!s1 && !s2) p.p_DD += w;
    else if (s1) p.p_SD += w;
    else p.p_DS += w;
  }
  return p;
}

MsGateResult ms_gate_evolution(const GateParams& params, std::span<const double> t_grid) {
  params.validate();
  const std::size_t nmax = params.n_motional_max;
  const HilbertSpace space{2, 2, nmax + 1};
  const double f = 0.5 * kTwoPi * params.sideband_rabi();
  const double delta = kTwoPi * params.delta_MS;

  const DenseMatrix x = qcore::transition(2, 0, 1).dense() + qcore::transition(2, 1, 0).dense();
  const Operator xo(HilbertSpace{2}, x);
  const DenseMatrix j = (qcore::embed(xo, 0, space) + qcore::embed(xo, 1, space)).dense();
  const DenseMatrix a = qcore::embed(qcore::annihilation(nmax), 2, space).dense();
  const DenseMatrix ja = f * j * a;
  const DenseMatrix jad = ja.adjoint();

  auto rhs = [&](double t, const qcore::Vector& psi) -> qcore::Vector {
    const Complex e = std::exp(Complex(0.0, -delta * t));
    return Complex(0.0, -1.0) * (e * (ja * psi) + std::conj(e) * (jad * psi));
  };

  MsGateResult out;
  qcore::Vector psi = StateVector::basis(space, {0, 0, 0}).amplitudes();
  const double dt_nominal = params.gate_time() / kStepsPerGate;
  double t = 0.0;

  auto record = [&](double when) {
    double pss = 0.0;
    double pdd = 0.0;
    double pmix = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const double w = std::norm(psi(static_cast<Eigen::Index>(i)));
      const auto d = space.unflatten(i);
      if (d[0] == 0 && d[1] == 0) pss += w;
      else if (d[0] == 1 && d[1] == 1) pdd += w;
      else pmix += w;
      if (d[2] == nmax) top += w;
    }
    out.times.push_back(when);
    out.p_SS.push_back(pss);
    out.p_DD.push_back(pdd);
    out.p_mixed.push_back(pmix);
    out.top_fock_population.push_back(top);
    if (top > kTruncationLimit) {
      throw NumericalError("ms_gate_evolution: top motional level population " +
                           std::to_string(top) + " exceeds 1e-3 at t=" + std::to_string(when) +
                           " s; raise n_motional_max");
    }
  };

  for (double target : t_grid) {
    if (target < t - 1e-18) throw ConfigError("ms_gate_evolution: t_grid must be nondecreasing");
    if (target < 0.0) throw ConfigError("ms_gate_evolution: t_grid must be >= 0");
    while (t < target) {
      const double h = std::min(dt_nominal, target - t);
      const qcore::Vector k1 = rhs(t, psi);
      const qcore::Vector k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
      const qcore::Vector k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
      const qcore::Vector k4 = rhs(t + h, psi + h * k3);
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = (target - t - h) <= 0.0 ? target : t + h;
    }
    record(target);
  }
  out.final_state = StateVector(space, psi);
  return out;
}

StateVector bell_phi_qubits() {
  const HilbertSpace q{2, 2};
  return std::sqrt(0.5) * (StateVector::basis(q, {0, 0}) +
                           Complex(0.0, 1.0) * StateVector::basis(q, {1, 1}));
}

DensityMatrix ms_spin_state(const StateVector& final_state) {
  const std::size_t motion[] = {2};
  return qcore::partial_trace(DensityMatrix::pure(final_state), motion);
}

double ms_bell_fidelity(const StateVector& final_state) {
  return qcore::fidelity(ms_spin_state(final_state), bell_phi_qubits());
}

std::vector<double> parity_scan(const DensityMatrix& rho, std::span<const double> phases) {
  std::vector<double> out;
  out.reserve(phases.size());
  for (double phi : phases) {
    out.push_back(spin_populations(global_rotation(rho, 0.5 * std::numbers::pi, phi)).parity());
  }
  return out;
}

ParityFit fit_parity(std::span<const double> phases, std::span<const double> parity) {
  if (phases.size() != parity.size()) throw ConfigError("fit_parity: size mismatch");
  if (phases.size() < 8) throw ConfigError("fit_parity: need at least 8 phase samples");
  const auto n = static_cast<Eigen::Index>(phases.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double p = phases[static_cast<std::size_t>(k)];
    design(k, 0) = std::cos(2.0 * p);
    design(k, 1) = std::sin(2.0 * p);
    design(k, 2) = 1.0;
    y(k) = parity[static_cast<std::size_t>(k)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-9);
  if (qr.rank() < 3) throw NumericalError("fit_parity: phases do not determine a sinusoid");
  const Eigen::VectorXd c = qr.solve(y);
  ParityFit fit;
  fit.cos_coeff = c(0);
  fit.sin_coeff = c(1);
  fit.offset = c(2);
  fit.amplitude = std::min(1.0, std::hypot(c(0), c(1)));
  fit.rms_residual = std::sqrt((design * c - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

double fidelity_bound(std::span<const double> phases, std::span<const double> parity) {
  return fit_parity(phases, parity).amplitude;
}

DensityMatrix stark_phase_gate(const DensityMatrix& rho, double duration, const GateParams& params) {
  params.validate();
  if (duration < 0.0) throw ConfigError("stark_phase_gate: duration must be >= 0");
  const HilbertSpace& space = rho.space();
  if (space.num_factors() < 2) throw DimensionError("stark_phase_gate: need two ions");
  const std::size_t slot = static_cast<std::size_t>(params.stark_addressed_ion - 1);
  const std::size_t levels = space.factor(slot);
  const double phase = kTwoPi * duration / params.stark_period;
  DenseMatrix u = DenseMatrix::Identity(static_cast<Eigen::Index>(levels),
                                        static_cast<Eigen::Index>(levels));
  const auto d = static_cast<Eigen::Index>(d_index(levels));
  u(d, d) = std::exp(Complex(0.0, phase));
  const Operator full = qcore::embed(Operator(HilbertSpace{levels}, std::move(u)), slot, space);
  return qcore::conjugate(full, rho);
}

std::vector<RamseyPoint> stark_ramsey(const GateParams& params, std::span<const double> taus) {
  const DensityMatrix start = DensityMatrix::pure(StateVector::basis(HilbertSpace{2, 2}, {0, 0}));
  const DensityMatrix first = global_rotation(start, 0.5 * std::numbers::pi, 0.0);
  std::vector<RamseyPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    const DensityMatrix shifted = stark_phase_gate(first, tau, params);
    const DensityMatrix last = global_rotation(shifted, 0.5 * std::numbers::pi, 0.0);
    out.push_back({tau, spin_populations(last)});
  }
  return out;
}

double oscillation_period(std::span<const double> t, std::span<const double> y, double period_min,
                          double period_max) {
  if (t.size() != y.size()) throw ConfigError("oscillation_period: size mismatch");
  if (t.size() < 5) throw ConfigError("oscillation_period: need at least 5 samples");
  if (!(period_min > 0.0) || !(period_max > period_min)) {
    throw ConfigError("oscillation_period: bad period bracket");
  }
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::VectorXd obs(n);
  for (Eigen::Index k = 0; k < n; ++k) obs(k) = y[static_cast<std::size_t>(k)];
  auto residual = [&](double period) {
    Eigen::MatrixXd design(n, 3);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double w = kTwoPi * t[static_cast<std::size_t>(k)] / period;
      design(k, 0) = std::cos(w);
      design(k, 1) = std::sin(w);
      design(k, 2) = 1.0;
    }
    const Eigen::VectorXd c = design.colPivHouseholderQr().solve(obs);
    return (design * c - obs).squaredNorm();
  };
  // Coarse scan, then golden-section refinement around the best point.
  constexpr int kScan = 400;
  double best = period_min;
  double best_r = residual(best);
  for (int i = 1; i <= kScan; ++i) {
    const double p = period_min + (period_max - period_min) * i / kScan;
    const double r = residual(p);
    if (r < best_r) {
      best_r = r;
      best = p;
    }
  }
  const double step = (period_max - period_min) / kScan;
  double a = std::max(period_min, best - step);
  double b = std::min(period_max, best + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double rc = residual(c);
  double rd = residual(d);
  for (int it = 0; it < 100 && b - a > 1e-12 * best; ++it) {
    if (rc < rd) {
      b = d;
      d = c;
      rd = rc;
      c = b - g * (b - a);
      rc = residual(c);
    } else {
      a = c;
      c = d;
      rc = rd;
      d = a + g * (b - a);
      rd = residual(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ioncavity::control
