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

#include "ioncavity/dynamics/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ioncavity/error.hpp"

namespace ioncavity::dynamics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Emission-rate density eta * 2 kappa <n> in detection probability per second.
std::vector<double> emission_density(const Trajectory& traj, const model::PhysicalParams& params,
                                     const std::string& name) {
  std::vector<double> y = traj.series(name);
  const double scale = params.detection_efficiency * 2.0 * kTwoPi * params.kappa;
  for (double& v : y) v *= scale;
  return y;
}

std::vector<double> total_density(const Trajectory& traj, const model::PhysicalParams& params) {
  std::vector<double> y = emission_density(traj, params, "n_H");
  if (traj.has_series("n_V")) {
    const auto v = emission_density(traj, params, "n_V");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += v[i];
  }
  return y;
}

std::pair<std::size_t, std::size_t> window(const Trajectory& traj, double t0, double t1) {
  if (t1 < t0) throw ConfigError("detection window: t1 < t0");
  return {traj.index_of(t0), traj.index_of(t1)};
}

}  // namespace

std::vector<double> photon_shape(const Trajectory& traj, const model::PhysicalParams& params) {
  const double ratio = traj.bin_width() / traj.sample_interval();
  const auto per_bin = static_cast<std::size_t>(std::llround(ratio));
  if (per_bin == 0 || std::abs(static_cast<double>(per_bin) - ratio) > 1e-6) {
    throw ConfigError("photon_shape: bin_width must be a multiple of sample_interval");
  }
  const auto y = total_density(traj, params);
  const std::size_t bins = (y.size() - 1) / per_bin;
  std::vector<double> out(bins);
  const double dark = params.dark_rate_total() * traj.bin_width();
  for (std::size_t b = 0; b < bins; ++b) {
    out[b] = integrate_samples(y, b * per_bin, (b + 1) * per_bin, traj.sample_interval()) + dark;
  }
  return out;
}

double detection_probability(const Trajectory& traj, const model::PhysicalParams& params,
                             double t0, double t1) {
  const auto [i0, i1] = window(traj, t0, t1);
  if (i0 == i1) return 0.0;
  const auto y = total_density(traj, params);
  return integrate_samples(y, i0, i1, traj.sample_interval()) +
         params.dark_rate_total() * (t1 - t0);
}

CumulativeEfficiency cumulative_efficiency(const Trajectory& traj,
                                           const model::PhysicalParams& params) {
  const auto shape = photon_shape(traj, params);
  CumulativeEfficiency out;
  out.times.push_back(0.0);
  out.epsilon.push_back(0.0);
  double acc = 0.0;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    acc += shape[b];
    out.times.push_back(static_cast<double>(b + 1) * traj.bin_width());
    out.epsilon.push_back(acc);
  }
  return out;
}

Matrix2c polarization_integral(const Trajectory& traj, const model::PhysicalParams& params,
                               double t0, double t1) {
  const auto [i0, i1] = window(traj, t0, t1);
  const double h = traj.sample_interval();
  const double hh = integrate_samples(emission_density(traj, params, "n_H"), i0, i1, h);
  const double vv = integrate_samples(emission_density(traj, params, "n_V"), i0, i1, h);
  const double re = integrate_samples(emission_density(traj, params, "ba_re"), i0, i1, h);
  const double im = integrate_samples(emission_density(traj, params, "ba_im"), i0, i1, h);
  // <b^dag a> is the (H, V) element: rho_HV = Tr(rho |H><V|) with a|H> = |0>.
  const std::complex<double> hv(re, im);
  Matrix2c m{};
  m[0][0] = hh;
  m[1][1] = vv;
  m[0][1] = hv;
  m[1][0] = std::conj(hv);
  return m;
}

double coherence_factor(const model::PhysicalParams& params, double t) {
  if (!(params.tau_SSp > 0.0)) throw ConfigError("params.tau_SSp: must be > 0");
  if (std::isinf(params.tau_SSp)) return params.coherence_scale;
  const double x = 2.0 * t / params.tau_SSp;
  return params.coherence_scale * std::exp(-x * x);
}

namespace {

void scale_by_labels(qcore::DenseMatrix& m, std::span<const std::size_t> basis,
                     const std::vector<int>& labels, double f) {
  const auto n = m.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    const int lj = labels[basis[static_cast<std::size_t>(j)]];
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[basis[static_cast<std::size_t>(i)]] != lj) m(i, j) *= f;
    }
  }
}

}  // namespace

qcore::DensityMatrix apply_imperfection_scalings(const qcore::DensityMatrix& rho,
                                                 const std::vector<int>& labels,
                                                 const model::PhysicalParams& params, double t) {
  const std::size_t n = rho.space().dim();
  if (labels.size() != n) throw DimensionError("apply_imperfection_scalings: label count mismatch");
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[i] = i;
  qcore::DenseMatrix m = rho.matrix();
  scale_by_labels(m, basis, labels, coherence_factor(params, t));
  return qcore::DensityMatrix::unchecked(rho.space(), std::move(m));
}

std::vector<qcore::DensityMatrix> apply_imperfection_scalings(
    const std::vector<qcore::DensityMatrix>& series, const std::vector<double>& times,
    const std::vector<int>& labels, const model::PhysicalParams& params) {
  if (series.size() != times.size()) {
    throw DimensionError("apply_imperfection_scalings: states and times differ in length");
  }
  std::vector<qcore::DensityMatrix> out;
  out.reserve(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    out.push_back(apply_imperfection_scalings(series[k], labels, params, times[k]));
  }
  return out;
}

ObservationTransform imperfection_transform(std::vector<int> labels,
                                            const model::PhysicalParams& params) {
  coherence_factor(params, 0.0);  // validates tau
  return [labels = std::move(labels), params](double t, std::span<const std::size_t> basis,
                                              qcore::DenseMatrix& rho) {
    scale_by_labels(rho, basis, labels, coherence_factor(params, t));
  };
}

}  // namespace ioncavity::dynamics
