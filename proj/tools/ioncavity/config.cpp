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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ioncavity/error.hpp"

namespace ioncavity::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
  static const std::vector<std::pair<Experiment, std::string>> names{
      {Experiment::ms_gate, "ms-gate"},         {Experiment::parity_scan, "parity-scan"},
      {Experiment::stark_demo, "stark-demo"},   {Experiment::phase_sweep, "phase-sweep"},
      {Experiment::photon_shape, "photon-shape"}, {Experiment::tomography, "tomography"},
      {Experiment::efficiency, "efficiency"},   {Experiment::two_photon, "two-photon"}};
  return names;
}

// Reads fields of one JSON object; remembers which keys were consumed.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  template <typename T>
  void operator()(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    read(*it, out, path_ + "." + key);
  }

  bool has(const char* key) const { return j_.contains(key); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(path_ + "." + item.key() + ": unknown key");
    }
  }

 private:
  static void read(const json& v, double& out, const std::string& p) {
    if (!v.is_number()) throw ConfigError(p + ": expected a number");
    out = v.get<double>();
  }
  static void read(const json& v, std::optional<double>& out, const std::string& p) {
    if (v.is_null()) {
      out.reset();
      return;
    }
    double d = 0.0;
    read(v, d, p);
    out = d;
  }
  static void read(const json& v, bool& out, const std::string& p) {
    if (!v.is_boolean()) throw ConfigError(p + ": expected true or false");
    out = v.get<bool>();
  }
  static void read(const json& v, int& out, const std::string& p) {
    if (!v.is_number_integer()) throw ConfigError(p + ": expected an integer");
    out = v.get<int>();
  }
  static void read(const json& v, std::int64_t& out, const std::string& p) {
    if (!v.is_number_integer()) throw ConfigError(p + ": expected an integer");
    out = v.get<std::int64_t>();
  }
  static void read(const json& v, std::size_t& out, const std::string& p) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ConfigError(p + ": expected a nonnegative integer");
    }
    out = v.get<std::size_t>();
  }
  static void read(const json& v, json& out, const std::string&) { out = v; }
  static void read(const json& v, std::string& out, const std::string& p) {
    if (!v.is_string()) throw ConfigError(p + ": expected a string");
    out = v.get<std::string>();
  }
  static void read(const json& v, std::vector<double>& out, const std::string& p) {
    if (!v.is_array()) throw ConfigError(p + ": expected an array of numbers");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      double d = 0.0;
      read(v[i], d, p + "[" + std::to_string(i) + "]");
      out.push_back(d);
    }
  }
  template <typename E, typename Parse>
  static void read_enum(const json& v, E& out, const std::string& p, Parse parse) {
    std::string s;
    read(v, s, p);
    try {
      out = parse(s);
    } catch (const ConfigError& e) {
      throw ConfigError(p + ": " + e.what());
    }
  }
  static void read(const json& v, dynamics::Method& out, const std::string& p) {
    read_enum(v, out, p, dynamics::method_from_string);
  }
  static void read(const json& v, photonstats::Convention& out, const std::string& p) {
    read_enum(v, out, p, photonstats::convention_from_string);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Writes fields into a JSON object; the counterpart of Reader.
class Writer {
 public:
  explicit Writer(json& j) : j_(j) { j_ = json::object(); }

  template <typename T>
  void operator()(const char* key, const T& v) {
    j_[key] = value(v);
  }

 private:
  template <typename T>
  static json value(const T& v) {
    return json(v);
  }
  static json value(const double& v) {
    if (std::isinf(v)) return v > 0 ? json(std::numeric_limits<double>::max()) : json(-std::numeric_limits<double>::max());
    return json(v);
  }
  static json value(const std::optional<double>& v) { return v ? value(*v) : json(nullptr); }
  static json value(const dynamics::Method& m) { return dynamics::to_string(m); }
  static json value(const photonstats::Convention& c) { return photonstats::to_string(c); }

  json& j_;
};

template <typename V>
void visit(V& v, model::PhysicalParams& p) {
  v("g_PD", p.g_PD);
  v("kappa", p.kappa);
  v("gamma", p.gamma);
  v("branching_PS", p.branching_PS);
  v("branching_same_sublevel", p.branching_same_sublevel);
  v("Omega_SD", p.Omega_SD);
  v("Omega_SpD", p.Omega_SpD);
  v("Delta", p.Delta);
  v("B", p.B);
  v("ion_separation", p.ion_separation);
  v("raman_angle", p.raman_angle);
  v("raman_wavelength", p.raman_wavelength);
  v("laser_linewidth", p.laser_linewidth);
  v("zeta", p.zeta);
  v("xi_SD", p.xi_SD);
  v("xi_SpD", p.xi_SpD);
  v("larger_tone_on_SpD", p.larger_tone_on_SpD);
  v("coupling_asymmetry", p.coupling_asymmetry);
  v("weaker_ion", p.weaker_ion);
  v("tau_SSp", p.tau_SSp);
  v("tau_SD", p.tau_SD);
  v("detection_efficiency", p.detection_efficiency);
  v("dark_rate_1", p.dark_rate_1);
  v("dark_rate_2", p.dark_rate_2);
  v("prep_error_SS_DD", p.prep_error_SS_DD);
  v("prep_error_single", p.prep_error_single);
  v("coherence_scale", p.coherence_scale);
}

template <typename V>
void visit(V& v, control::GateParams& g) {
  v("delta_MS", g.delta_MS);
  v("eta_Omega", g.eta_Omega);
  v("n_motional_max", g.n_motional_max);
  v("stark_delta", g.stark_delta);
  v("stark_Omega", g.stark_Omega);
  v("stark_period", g.stark_period);
  v("stark_addressed_ion", g.stark_addressed_ion);
}

template <typename V>
void visit(V& v, dynamics::IntegratorConfig& c) {
  v("t_end", c.t_end);
  v("dt", c.dt);
  v("method", c.method);
  v("rel_tol", c.rel_tol);
  v("abs_tol", c.abs_tol);
  v("sample_interval", c.sample_interval);
  v("bin_width", c.bin_width);
  v("restrict_to_reachable", c.restrict_to_reachable);
  v("trace_tol", c.trace_tol);
  v("min_eigenvalue_tol", c.min_eigenvalue_tol);
  v("positivity_every", c.positivity_every);
}

template <typename V>
void visit(V& v, PhaseSweepSection& s) {
  v("num_phases", s.num_phases);
  v("phases", s.phases);
  v("window", s.window);
  v("noisy", s.noisy);
  v("noisy_reference", s.noisy_reference);
}

template <typename V>
void visit(V& v, PhotonShapeSection& s) {
  v("noisy", s.noisy);
  v("yield_window", s.yield_window);
}

template <typename V>
void visit(V& v, TomographySection& s) {
  v("window_start", s.window_start);
  v("window_ends", s.window_ends);
  v("shots", s.shots);
  v("resamples", s.resamples);
  v("detector_asymmetry", s.detector_asymmetry);
  v("noisy", s.noisy);
}

template <typename V>
void visit(V& v, EfficiencySection& s) {
  v("noisy", s.noisy);
  v("report_times", s.report_times);
}

template <typename V>
void visit(V& v, TwoPhotonSection& s) {
  v("p_SS", s.coincidence.p_SS);
  v("p_det", s.coincidence.p_det);
  v("window", s.coincidence.window);
  v("dark_rate_1", s.dark_rate_1);
  v("dark_rate_2", s.dark_rate_2);
  v("splitter_ratio", s.coincidence.splitter_ratio);
  v("convention", s.coincidence.convention);
  v("attempts", s.attempts);
  v("observed_events", s.observed_events);
  v("monte_carlo_attempts", s.monte_carlo_attempts);
}

template <typename V>
void visit(V& v, MsGateSection& s) {
  v("num_points", s.num_points);
}

template <typename V>
void visit(V& v, ParityScanSection& s) {
  v("num_phases", s.num_phases);
  v("state", s.state);
}

template <typename V>
void visit(V& v, StarkDemoSection& s) {
  v("num_points", s.num_points);
  v("tau_max", s.tau_max);
}

template <typename T>
void read_section(const json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  Reader r(*it, key);
  visit(r, out);
  r.finish();
}

template <typename T>
json write_section(T value) {
  json j;
  Writer w(j);
  visit(w, value);
  return j;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void validate_sections(const Config& c) {
  require(c.phase_sweep.phases.empty() ? c.phase_sweep.num_phases >= 1 : true,
          "phase_sweep.num_phases: must be >= 1");
  require(c.phase_sweep.window > 0.0, "phase_sweep.window: must be > 0");
  require(c.photon_shape.yield_window > 0.0, "photon_shape.yield_window: must be > 0");
  require(c.tomography.window_start >= 0.0, "tomography.window_start: must be >= 0");
  require(!c.tomography.window_ends.empty(), "tomography.window_ends: must not be empty");
  for (double t : c.tomography.window_ends) {
    require(t > c.tomography.window_start, "tomography.window_ends: every end must exceed window_start");
  }
  require(c.tomography.shots > 0, "tomography.shots: must be > 0");
  require(c.tomography.resamples == 0 || c.tomography.resamples >= 100,
          "tomography.resamples: must be 0 (off) or >= 100");
  require(c.tomography.detector_asymmetry >= 0.0 && c.tomography.detector_asymmetry < 1.0,
          "tomography.detector_asymmetry: must be in [0, 1)");
  for (double t : c.efficiency.report_times) require(t >= 0.0, "efficiency.report_times: must be >= 0");
  require(c.two_photon.attempts > 0, "two_photon.attempts: must be > 0");
  require(c.two_photon.observed_events >= 0, "two_photon.observed_events: must be >= 0");
  require(c.two_photon.monte_carlo_attempts >= 0, "two_photon.monte_carlo_attempts: must be >= 0");
  c.two_photon.coincidence.validate();
  require(c.ms_gate.num_points >= 2, "ms_gate.num_points: must be >= 2");
  require(c.parity_scan.num_phases >= 8, "parity_scan.num_phases: must be >= 8");
  require(c.parity_scan.state == "ms_gate" || c.parity_scan.state == "phi",
          "parity_scan.state: expected 'ms_gate' or 'phi'");
  require(c.stark_demo.num_points >= 5, "stark_demo.num_points: must be >= 5");
  require(c.stark_demo.tau_max >= 0.0, "stark_demo.tau_max: must be >= 0");
  require(c.threads >= 1, "threads: must be >= 1");
  require(!c.out_dir.empty(), "output.dir: must not be empty");
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : experiment_names()) {
    if (k == e) return name;
  }
  return "?";
}

Experiment experiment_from_string(const std::string& name) {
  for (const auto& [k, n] : experiment_names()) {
    if (n == name) return k;
  }
  throw ConfigError("experiment: unknown experiment '" + name + "'");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (const auto& [k, n] : experiment_names()) v.push_back(k);
    return v;
  }();
  return all;
}

double Config::span() const {
  if (t_end_given) return integrator.t_end;
  switch (experiment) {
    case Experiment::phase_sweep: return phase_sweep.window;
    case Experiment::photon_shape: return 20e-6;
    case Experiment::tomography: {
      double m = 0.0;
      for (double t : tomography.window_ends) m = std::max(m, t);
      return m;
    }
    case Experiment::efficiency: {
      double m = 55e-6;
      for (double t : efficiency.report_times) m = std::max(m, t);
      return m;
    }
    default: return integrator.t_end;
  }
}

Config parse_config(const json& doc, Experiment experiment) {
  Reader root(doc, "config");
  Config c;
  c.experiment = experiment;

  std::string named;
  root("experiment", named);
  if (!named.empty() && experiment_from_string(named) != experiment) {
    throw ConfigError("config.experiment: file is for '" + named + "', command is '" +
                      to_string(experiment) + "'");
  }
  root("seed", c.seed);
  root("threads", c.threads);

  json params = json::object();
  root("params", params);
  if (params.is_object() && params.contains("preset")) {
    const auto& p = params["preset"];
    if (!p.is_string()) throw ConfigError("params.preset: expected a string");
    c.params_preset = p.get<std::string>();
    if (c.params_preset == "ideal") {
      c.params = c.params.ideal();
    } else if (c.params_preset != "default") {
      throw ConfigError("params.preset: expected 'default' or 'ideal'");
    }
    params.erase("preset");
  }
  {
    Reader r(params, "params");
    visit(r, c.params);
    r.finish();
  }
  json integrator = json::object();
  root("integrator", integrator);
  {
    Reader r(integrator, "integrator");
    visit(r, c.integrator);
    r.finish();
    c.t_end_given = r.has("t_end");
  }
  json ignored;
  root("gate", ignored);
  read_section(doc, "gate", c.gate);
  root("phase_sweep", ignored);
  read_section(doc, "phase_sweep", c.phase_sweep);
  root("photon_shape", ignored);
  read_section(doc, "photon_shape", c.photon_shape);
  root("tomography", ignored);
  read_section(doc, "tomography", c.tomography);
  root("efficiency", ignored);
  read_section(doc, "efficiency", c.efficiency);
  root("two_photon", ignored);
  read_section(doc, "two_photon", c.two_photon);
  root("ms_gate", ignored);
  read_section(doc, "ms_gate", c.ms_gate);
  root("parity_scan", ignored);
  read_section(doc, "parity_scan", c.parity_scan);
  root("stark_demo", ignored);
  read_section(doc, "stark_demo", c.stark_demo);
  json output = json::object();
  root("output", output);
  {
    Reader r(output, "output");
    r("dir", c.out_dir);
    r.finish();
  }
  root.finish();

  c.two_photon.dark_rate_1 = c.two_photon.dark_rate_1.value_or(c.params.dark_rate_1);
  c.two_photon.dark_rate_2 = c.two_photon.dark_rate_2.value_or(c.params.dark_rate_2);
  c.two_photon.coincidence.dark_rate_1 = *c.two_photon.dark_rate_1;
  c.two_photon.coincidence.dark_rate_2 = *c.two_photon.dark_rate_2;
  c.integrator.t_end = c.span();

  c.params.validate();
  c.gate.validate();
  c.integrator.validate();
  validate_sections(c);
  return c;
}

Config load_config(const std::string& path, Experiment experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return parse_config(doc, experiment);
}

json resolved_json(const Config& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["params"] = write_section(cfg.params);
  j["params"]["preset"] = cfg.params_preset;
  j["gate"] = write_section(cfg.gate);
  j["integrator"] = write_section(cfg.integrator);
  j["phase_sweep"] = write_section(cfg.phase_sweep);
  j["photon_shape"] = write_section(cfg.photon_shape);
  j["tomography"] = write_section(cfg.tomography);
  j["efficiency"] = write_section(cfg.efficiency);
  j["two_photon"] = write_section(cfg.two_photon);
  j["ms_gate"] = write_section(cfg.ms_gate);
  j["parity_scan"] = write_section(cfg.parity_scan);
  j["stark_demo"] = write_section(cfg.stark_demo);
  j["output"] = {{"dir", cfg.out_dir}};
  return j;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ioncavity::cli
