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

#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "ioncavity/control/gates.hpp"
#include "ioncavity/control/preparation.hpp"
#include "ioncavity/error.hpp"
#include "ioncavity/experiments/pipelines.hpp"
#include "ioncavity/photonstats/coincidence.hpp"
#include "ioncavity/tomography/serialize.hpp"

#ifndef IONCAVITY_VERSION
#define IONCAVITY_VERSION "0.0.0"
#endif

namespace ioncavity::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    row_strings(header);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> s;
    s.reserve(values.size());
    for (double v : values) s.push_back(num(v));
    row_strings(s);
  }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::ofstream out_;
};

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  Csv csv(const std::string& name, const std::vector<std::string>& header) {
    names_.push_back(name);
    return Csv(dir_ / name, header);
  }
  void json_file(const std::string& name, const json& j) {
    names_.push_back(name);
    write(name, j);
  }
  void write(const std::string& name, const json& j) const {
    std::ofstream out(dir_ / name);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    out << j.dump(2) << '\n';
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

experiments::RunOptions run_options(const Config& cfg) {
  experiments::RunOptions run;
  run.integrator = cfg.integrator;
  run.threads = cfg.threads;
  return run;
}

json fit_json(const control::ParityFit& f) {
  return {{"amplitude", f.amplitude}, {"cos_coeff", f.cos_coeff}, {"sin_coeff", f.sin_coeff},
          {"offset", f.offset},       {"rms_residual", f.rms_residual}};
}

void run_ms_gate(const Config& cfg, Outputs& out) {
  const auto times = linspace(0.0, cfg.gate.gate_time(), cfg.ms_gate.num_points);
  const auto r = control::ms_gate_evolution(cfg.gate, times);
  auto csv = out.csv("ms_gate.csv", {"time_us", "p_SS", "p_DD", "p_mixed", "top_fock"});
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    csv.row({r.times[i] * 1e6, r.p_SS[i], r.p_DD[i], r.p_mixed[i], r.top_fock_population[i]});
  }
  out.json_file("ms_gate.json", {{"gate_time_us", cfg.gate.gate_time() * 1e6},
                                 {"p_SS_final", r.p_SS.back()},
                                 {"p_DD_final", r.p_DD.back()},
                                 {"p_mixed_max", *std::max_element(r.p_mixed.begin(), r.p_mixed.end())},
                                 {"bell_fidelity", control::ms_bell_fidelity(r.final_state)}});
}

void run_parity_scan(const Config& cfg, Outputs& out) {
  const std::size_t n = cfg.parity_scan.num_phases;
  std::vector<double> phases(n);
  for (std::size_t i = 0; i < n; ++i) phases[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  qcore::DensityMatrix rho;
  json extra;
  if (cfg.parity_scan.state == "ms_gate") {
    const double t = cfg.gate.gate_time();
    const std::vector<double> grid{0.0, t};
    const auto r = control::ms_gate_evolution(cfg.gate, grid);
    rho = control::ms_spin_state(r.final_state);
    extra["bell_fidelity"] = control::ms_bell_fidelity(r.final_state);
  } else {
    rho = control::prepare_phi().rho;
  }
  const auto parity = control::parity_scan(rho, phases);
  auto csv = out.csv("parity_scan.csv", {"phi", "parity"});
  for (std::size_t i = 0; i < n; ++i) csv.row({phases[i], parity[i]});
  json j = extra;
  j["state"] = cfg.parity_scan.state;
  j["fit"] = fit_json(control::fit_parity(phases, parity));
  j["fidelity_bound"] = control::fidelity_bound(phases, parity);
  out.json_file("parity_scan.json", j);
}

void run_stark_demo(const Config& cfg, Outputs& out) {
  const double tau_max = cfg.stark_demo.tau_max > 0.0 ? cfg.stark_demo.tau_max : 2.0 * cfg.gate.stark_period;
  const auto taus = linspace(0.0, tau_max, cfg.stark_demo.num_points);
  const auto pts = control::stark_ramsey(cfg.gate, taus);
  auto csv = out.csv("stark_demo.csv", {"tau_us", "p_SS", "p_SD", "p_DS", "p_DD"});
  std::vector<double> p_sd;
  for (const auto& p : pts) {
    csv.row({p.tau * 1e6, p.pops.p_SS, p.pops.p_SD, p.pops.p_DS, p.pops.p_DD});
    p_sd.push_back(p.pops.p_SD);
  }
  const std::vector<double> half{0.5 * cfg.gate.stark_period};
  const auto at_half = control::stark_ramsey(cfg.gate, half).front().pops;
  out.json_file("stark_demo.json",
                {{"stark_period_us", cfg.gate.stark_period * 1e6},
                 {"p_SD_half_period", at_half.p_SD},
                 {"p_DS_half_period", at_half.p_DS},
                 {"period_estimate_us",
                  control::oscillation_period(taus, p_sd, tau_max / 8.0, tau_max) * 1e6}});
}

void run_phase_sweep(const Config& cfg, Outputs& out) {
  auto phases = cfg.phase_sweep.phases;
  if (phases.empty()) {
    const std::size_t n = cfg.phase_sweep.num_phases;
    for (std::size_t i = 0; i < n; ++i) phases.push_back(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  }
  experiments::PhaseSweepOptions opt;
  opt.window = cfg.phase_sweep.window;
  opt.noisy = cfg.phase_sweep.noisy;
  opt.noisy_reference = cfg.phase_sweep.noisy_reference;
  const auto r = experiments::phase_sweep(cfg.params, phases, opt, run_options(cfg));
  auto csv = out.csv("phase_sweep.csv", {"phi", "probability", "ratio"});
  for (std::size_t i = 0; i < r.phases.size(); ++i) csv.row({r.phases[i], r.probability[i], r.ratio[i]});
  out.json_file("phase_sweep.json", {{"window_us", opt.window * 1e6},
                                     {"single_ion_psi1", r.single_ion[0]},
                                     {"single_ion_psi2", r.single_ion[1]},
                                     {"reference_probability", r.reference_probability},
                                     {"phi_super", r.phi_super},
                                     {"phi_sub", r.phi_sub},
                                     {"r_super", r.r_super},
                                     {"r_sub", r.r_sub}});
}

void run_photon_shape(const Config& cfg, Outputs& out) {
  const auto run = run_options(cfg);
  const auto s = experiments::photon_shapes(cfg.params, cfg.photon_shape.noisy, run);
  auto csv = out.csv("photon_shape.csv", {"bin_start_us", "superradiant", "subradiant", "single_ion"});
  for (std::size_t i = 0; i < s.bin_start.size(); ++i) {
    csv.row({s.bin_start[i] * 1e6, s.superradiant[i], s.subradiant[i], s.single_ion[i]});
  }
  const auto y = experiments::yield_reduction(cfg.params, cfg.photon_shape.yield_window, run);
  json j{{"bin_width_us", cfg.integrator.bin_width * 1e6},
         {"first_bin_ratio", s.single_ion.empty() || s.single_ion[0] == 0.0 ? 0.0 : s.superradiant[0] / s.single_ion[0]},
         {"yield_window_us", cfg.photon_shape.yield_window * 1e6},
         {"yield_reference", y.reference},
         {"yield_noisy", y.noisy},
         {"yield_reduction", y.reduction}};
  out.json_file("photon_shape.json", j);
}

struct MappingPair {
  experiments::MappingSet super;
  experiments::MappingSet single;
};

MappingPair mapping_pair(const Config& cfg, bool noisy) {
  const auto run = run_options(cfg);
  return {experiments::mapping_runs(cfg.params, experiments::Encoding::superradiant, noisy, run),
          experiments::mapping_runs(cfg.params, experiments::Encoding::single_ion, noisy, run)};
}

void run_tomography(const Config& cfg, Outputs& out) {
  const auto maps = mapping_pair(cfg, cfg.tomography.noisy);
  experiments::TomographyOptions opt;
  opt.window_start = cfg.tomography.window_start;
  opt.window_ends = cfg.tomography.window_ends;
  opt.shots = cfg.tomography.shots;
  opt.resamples = cfg.tomography.resamples;
  opt.asymmetry = cfg.tomography.detector_asymmetry;
  opt.seed = cfg.seed;
  const auto pts = experiments::tomography_vs_window(maps.super, maps.single, cfg.params, opt, cfg.threads);
  auto csv = out.csv("tomography.csv", {"t0_us", "t1_us", "chi00_super", "se_super", "chi00_single",
                                        "se_single", "expected_super", "expected_single"});
  json windows = json::array();
  for (const auto& p : pts) {
    csv.row({p.t0 * 1e6, p.t1 * 1e6, p.chi00[0], p.std_error[0], p.chi00[1], p.std_error[1],
             p.expected[0], p.expected[1]});
    windows.push_back({{"t0_us", p.t0 * 1e6},
                       {"t1_us", p.t1 * 1e6},
                       {"superradiant", p.process[0]},
                       {"single_ion", p.process[1]}});
  }
  out.json_file("tomography.json", {{"shots", opt.shots}, {"resamples", opt.resamples}, {"windows", windows}});
}

void run_efficiency(const Config& cfg, Outputs& out) {
  const auto maps = mapping_pair(cfg, cfg.efficiency.noisy);
  const auto c = experiments::efficiency_curves(maps.super, maps.single, cfg.params);
  auto csv = out.csv("efficiency.csv", {"time_us", "eps_super", "eps_single", "ratio"});
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (c.times[i] <= 0.0) continue;
    const double ratio = c.single_ion[i] > 0.0 ? c.superradiant[i] / c.single_ion[i] : 0.0;
    csv.row({c.times[i] * 1e6, c.superradiant[i], c.single_ion[i], ratio});
  }
  json report = json::array();
  for (double t : cfg.efficiency.report_times) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      if (std::abs(c.times[i] - t) < std::abs(c.times[best] - t)) best = i;
    }
    if (std::abs(c.times[best] - t) > 1e-3 * cfg.integrator.bin_width) {
      throw ConfigError("efficiency.report_times: " + num(t) + " is not on the bin grid");
    }
    const double s = c.superradiant[best], g = c.single_ion[best];
    report.push_back({{"time_us", t * 1e6}, {"eps_super", s}, {"eps_single", g}, {"ratio", g > 0.0 ? s / g : 0.0}});
  }
  out.json_file("efficiency.json", {{"report", report}});
}

json expectation_json(const photonstats::TwoPhotonExpectation& e, std::int64_t attempts) {
  return {{"events", e.events},
          {"total", e.total},
          {"expected_events_per_attempt", e.total},
          {"one_event_per", e.total > 0.0 ? 1.0 / e.total : 0.0},
          {"expected_events", e.expected_events(attempts)}};
}

void run_two_photon(const Config& cfg, Outputs& out) {
  const auto& tp = cfg.two_photon;
  auto p = tp.coincidence;
  json j;
  j["convention"] = photonstats::to_string(p.convention);
  j["attempts"] = tp.attempts;
  j["observed_events"] = tp.observed_events;
  j["expectation"] = expectation_json(photonstats::two_photon_expectation(p), tp.attempts);
  auto alt = p;
  alt.convention = p.convention == photonstats::Convention::cross_detector ? photonstats::Convention::any_detector
                                                                           : photonstats::Convention::cross_detector;
  j["alternative"] = expectation_json(photonstats::two_photon_expectation(alt), tp.attempts);
  j["alternative"]["convention"] = photonstats::to_string(alt.convention);
  const auto singles = photonstats::singles_probabilities(p);
  j["singles_probabilities"] = singles;
  j["expected_g2"] = photonstats::expected_g2(p);
  if (tp.monte_carlo_attempts > 0) {
    const auto mc = photonstats::two_photon_monte_carlo(p, tp.monte_carlo_attempts, cfg.seed, cfg.threads);
    j["monte_carlo"] = {{"attempts", mc.attempts}, {"events", mc.events}, {"rate", mc.rate}, {"sigma", mc.sigma}};
  }
  out.json_file("two_photon.json", j);
}

}  // namespace

RunSummary run_experiment(const Config& cfg, const std::string& config_text) {
  const auto start = std::chrono::steady_clock::now();
  Outputs out(cfg.out_dir);
  switch (cfg.experiment) {
    case Experiment::ms_gate: run_ms_gate(cfg, out); break;
    case Experiment::parity_scan: run_parity_scan(cfg, out); break;
    case Experiment::stark_demo: run_stark_demo(cfg, out); break;
    case Experiment::phase_sweep: run_phase_sweep(cfg, out); break;
    case Experiment::photon_shape: run_photon_shape(cfg, out); break;
    case Experiment::tomography: run_tomography(cfg, out); break;
    case Experiment::efficiency: run_efficiency(cfg, out); break;
    case Experiment::two_photon: run_two_photon(cfg, out); break;
  }
  out.json_file("config.resolved.json", resolved_json(cfg));

  RunSummary summary;
  summary.outputs = out.names();
  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(config_text)));
  out.write("manifest.json", {{"experiment", to_string(cfg.experiment)},
                              {"version", IONCAVITY_VERSION},
                              {"config_fnv1a64", hash},
                              {"seed", cfg.seed},
                              {"threads", cfg.threads},
                              {"wall_seconds", summary.wall_seconds},
                              {"outputs", summary.outputs}});
  return summary;
}

}  // namespace ioncavity::cli
