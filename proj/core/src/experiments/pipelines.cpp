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

#include "ioncavity/experiments/pipelines.hpp"

#include <cmath>
#include <numbers>

#include "ioncavity/control/preparation.hpp"
#include "ioncavity/error.hpp"
#include "ioncavity/model/rates.hpp"
#include "ioncavity/util/parallel.hpp"
#include "ioncavity/util/random.hpp"

namespace ioncavity::experiments {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x) {
  x = std::fmod(x, kTwoPi);
  return x < 0.0 ? x + kTwoPi : x;
}

dynamics::Trajectory run_model(const model::LindbladModel& m, const model::PhysicalParams& params,
                               const qcore::DensityMatrix& ions, bool scalings,
                               const dynamics::IntegratorConfig& cfg) {
  const auto rho0 = model::with_cavity_vacuum(ions, m.space);
  const auto obs = dynamics::standard_observables(m);
  dynamics::ObservationTransform transform;
  if (scalings) transform = dynamics::imperfection_transform(model::qubit_labels(m.space, m.ion_levels), params);
  return dynamics::evolve(m, rho0, cfg, obs, transform).trajectory;
}

}  // namespace

double superradiant_phase(const model::PhysicalParams& params) { return wrap(-model::zeta_of(params)); }

double subradiant_phase(const model::PhysicalParams& params) {
  return wrap(std::numbers::pi - model::zeta_of(params));
}

dynamics::Trajectory monochromatic_emission(const model::PhysicalParams& params,
                                            const qcore::DensityMatrix& ions, bool scalings,
                                            const dynamics::IntegratorConfig& cfg) {
  const auto m = model::build_effective_model(params, model::EffectiveModelOptions{});
  return run_model(m, params, ions, scalings, cfg);
}

PhaseSweepResult phase_sweep(const model::PhysicalParams& params, const std::vector<double>& phases,
                             const PhaseSweepOptions& opt, const RunOptions& run) {
  if (phases.empty()) throw ConfigError("phase_sweep: empty phase grid");
  if (!(opt.window > 0.0) || opt.window > run.integrator.t_end + 1e-15) {
    throw ConfigError("phase_sweep.window: must lie in (0, integrator.t_end]");
  }
  PhaseSweepResult r;
  r.phases = phases;
  r.phi_super = superradiant_phase(params);
  r.phi_sub = subradiant_phase(params);
  std::vector<double> all = phases;
  all.push_back(r.phi_super);
  all.push_back(r.phi_sub);
  const std::size_t n = all.size();
  const auto probs = util::parallel_map(n + 2, run.threads, [&](std::size_t k) {
    const qcore::DensityMatrix ions =
        k < n ? control::prepare_psi_phi(all[k], params, opt.noisy).rho
              : control::prepare_single_ion(static_cast<int>(k - n) + 1, params, opt.noisy_reference).rho;
    const auto traj = monochromatic_emission(params, ions, opt.noisy, run.integrator);
    return dynamics::detection_probability(traj, params, 0.0, opt.window);
  });
  r.single_ion = {probs[n], probs[n + 1]};
  r.reference_probability = 0.5 * (probs[n] + probs[n + 1]);
  if (!(r.reference_probability > 0.0)) throw NumericalError("phase_sweep: reference emits no photons");
  for (std::size_t k = 0; k < phases.size(); ++k) {
    r.probability.push_back(probs[k]);
    r.ratio.push_back(probs[k] / r.reference_probability);
  }
  r.r_super = probs[n - 2] / r.reference_probability;
  r.r_sub = probs[n - 1] / r.reference_probability;
  return r;
}

PhotonShapes photon_shapes(const model::PhysicalParams& params, bool noisy, const RunOptions& run) {
  const auto shapes = util::parallel_map(3, run.threads, [&](std::size_t k) {
    const qcore::DensityMatrix ions =
        k == 0   ? control::prepare_psi_phi(superradiant_phase(params), params, noisy).rho
        : k == 1 ? control::prepare_psi_phi(subradiant_phase(params), params, noisy).rho
                 : control::prepare_single_ion(1, params, noisy).rho;
    return dynamics::photon_shape(monochromatic_emission(params, ions, noisy, run.integrator), params);
  });
  PhotonShapes out;
  out.superradiant = shapes[0];
  out.subradiant = shapes[1];
  out.single_ion = shapes[2];
  for (std::size_t b = 0; b < out.superradiant.size(); ++b) {
    out.bin_start.push_back(static_cast<double>(b) * run.integrator.bin_width);
  }
  return out;
}

YieldReduction yield_reduction(const model::PhysicalParams& params, double window,
                               const RunOptions& run) {
  model::PhysicalParams noisy = params;
  noisy.dark_rate_1 = 0.0;
  noisy.dark_rate_2 = 0.0;
  model::PhysicalParams reference = noisy;
  reference.prep_error_SS_DD = 0.0;
  reference.gamma = 0.0;
  const auto y = util::parallel_map(2, run.threads, [&](std::size_t k) {
    const auto& p = k == 0 ? reference : noisy;
    const auto ions = control::prepare_psi_phi(superradiant_phase(p), p, true).rho;
    return dynamics::detection_probability(monochromatic_emission(p, ions, true, run.integrator), p,
                                           0.0, window);
  });
  YieldReduction r{y[0], y[1], 1.0 - y[1] / y[0]};
  return r;
}

const char* to_string(Encoding e) { return e == Encoding::superradiant ? "superradiant" : "single_ion"; }

MappingSet mapping_runs(const model::PhysicalParams& params, Encoding encoding, bool noisy,
                        const RunOptions& run) {
  model::EffectiveModelOptions mo;
  mo.mode = model::DriveMode::bichromatic;
  const auto m = model::build_effective_model(params, mo);
  const control::PreparedState base =
      encoding == Encoding::superradiant
          ? control::prepare_psi_phi(superradiant_phase(params), params, noisy)
          : control::prepare_single_ion(1, params, noisy);
  auto runs = util::parallel_map(4, run.threads, [&](std::size_t k) {
    const auto& in = tomography::kStandardInputs[k];
    const auto prepared = control::prepare_superposition(in.alpha, in.beta, base);
    return run_model(m, params, prepared.rho, noisy, run.integrator);
  });
  MappingSet set;
  set.encoding = encoding;
  for (std::size_t k = 0; k < 4; ++k) set.runs[k] = std::move(runs[k]);
  return set;
}

std::vector<tomography::PhotonSignal> photon_signals(const MappingSet& set,
                                                     const model::PhysicalParams& params,
                                                     double t0, double t1) {
  std::vector<tomography::PhotonSignal> out;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto m = dynamics::polarization_integral(set.runs[k], params, t0, t1);
    tomography::PhotonSignal s;
    s.input = tomography::kStandardInputs[k];
    s.detected << m[0][0], m[0][1], m[1][0], m[1][1];
    out.push_back(s);
  }
  return out;
}

tomography::DetectorModel detector_model(const model::PhysicalParams& params, double t0, double t1,
                                         double asymmetry) {
  tomography::DetectorModel d;
  d.dark_1 = params.dark_rate_1 * (t1 - t0);
  d.dark_2 = params.dark_rate_2 * (t1 - t0);
  d.asymmetry = asymmetry;
  return d;
}

double expected_process_fidelity(const MappingSet& set, const model::PhysicalParams& params,
                                 double t0, double t1) {
  constexpr std::int64_t kShots = 1'000'000'000'000;
  const auto signals = photon_signals(set, params, t0, t1);
  const auto records =
      tomography::expected_measurements(signals, kShots, detector_model(params, t0, t1, 0.0));
  return tomography::process_fidelity(tomography::mle_process(records).process);
}

std::vector<TomographyPoint> tomography_vs_window(const MappingSet& super, const MappingSet& single,
                                                  const model::PhysicalParams& params,
                                                  const TomographyOptions& opt,
                                                  std::size_t threads) {
  if (opt.window_ends.empty()) throw ConfigError("tomography.window_ends: empty");
  for (double t1 : opt.window_ends) {
    if (!(t1 > opt.window_start)) throw ConfigError("tomography.window_ends: must exceed window_start");
  }
  struct Cell {
    double chi00 = 0.0;
    double se = 0.0;
    double expected = 0.0;
    tomography::ProcessMatrix process;
  };
  const std::size_t nw = opt.window_ends.size();
  const auto cells = util::parallel_map(2 * nw, threads, [&](std::size_t task) {
    const std::size_t w = task / 2;
    const MappingSet& set = task % 2 == 0 ? super : single;
    const double t0 = opt.window_start;
    const double t1 = opt.window_ends[w];
    const auto signals = photon_signals(set, params, t0, t1);
    const auto records = tomography::simulate_measurements(
        signals, opt.shots, detector_model(params, t0, t1, opt.asymmetry),
        util::derive_seed(opt.seed, task));
    Cell c;
    c.process = tomography::mle_process(records).process;
    c.chi00 = tomography::process_fidelity(c.process);
    if (opt.resamples > 0) {
      c.se = tomography::bootstrap(records, opt.resamples, util::derive_seed(opt.seed, 1000 + task), 1)
                 .std_error;
    }
    c.expected = expected_process_fidelity(set, params, t0, t1);
    return c;
  });
  std::vector<TomographyPoint> out(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    out[w].t0 = opt.window_start;
    out[w].t1 = opt.window_ends[w];
    for (std::size_t e = 0; e < 2; ++e) {
      const Cell& c = cells[2 * w + e];
      out[w].chi00[e] = c.chi00;
      out[w].std_error[e] = c.se;
      out[w].expected[e] = c.expected;
      out[w].process[e] = c.process;
    }
  }
  return out;
}

EfficiencyCurves efficiency_curves(const MappingSet& super, const MappingSet& single,
                                   const model::PhysicalParams& params) {
  EfficiencyCurves out;
  auto average = [&](const MappingSet& set) {
    std::vector<double> acc;
    for (const auto& traj : set.runs) {
      const auto c = dynamics::cumulative_efficiency(traj, params);
      if (acc.empty()) {
        acc.assign(c.epsilon.size(), 0.0);
        out.times = c.times;
      }
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += 0.25 * c.epsilon[i];
    }
    return acc;
  };
  out.superradiant = average(super);
  out.single_ion = average(single);
  return out;
}

}  // namespace ioncavity::experiments
