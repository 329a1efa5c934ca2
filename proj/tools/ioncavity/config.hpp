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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ioncavity/control/gates.hpp"
#include "ioncavity/dynamics/integrator.hpp"
#include "ioncavity/model/params.hpp"
#include "ioncavity/photonstats/coincidence.hpp"

namespace ioncavity::cli {

enum class Experiment {
  ms_gate,
  parity_scan,
  stark_demo,
  phase_sweep,
  photon_shape,
  tomography,
  efficiency,
  two_photon,
};
std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);
const std::vector<Experiment>& all_experiments();

struct PhaseSweepSection {
  std::size_t num_phases = 25;
  std::vector<double> phases;  // overrides num_phases when non-empty
  double window = 6e-6;
  bool noisy = true;
  bool noisy_reference = false;
};

struct PhotonShapeSection {
  bool noisy = true;
  double yield_window = 6e-6;
};

struct TomographySection {
  double window_start = 0.0;
  std::vector<double> window_ends{2e-6, 4e-6, 6e-6, 10e-6, 15e-6, 20e-6, 30e-6, 40e-6, 55e-6};
  std::int64_t shots = 2000;
  std::size_t resamples = 200;
  double detector_asymmetry = 0.10;
  bool noisy = true;
};

struct EfficiencySection {
  bool noisy = true;
  std::vector<double> report_times{6e-6, 55e-6};
};

struct TwoPhotonSection {
  photonstats::CoincidenceParams coincidence;
  // Unset: taken from params.
  std::optional<double> dark_rate_1;
  std::optional<double> dark_rate_2;
  std::int64_t attempts = 223106;
  std::int64_t observed_events = 28;
  std::int64_t monte_carlo_attempts = 0;
};

struct MsGateSection {
  std::size_t num_points = 551;
};

struct ParityScanSection {
  std::size_t num_phases = 32;
  std::string state = "ms_gate";  // or "phi"
};

struct StarkDemoSection {
  std::size_t num_points = 213;
  double tau_max = 0.0;  // 0: two Stark periods
};

struct Config {
  Experiment experiment = Experiment::phase_sweep;
  std::string params_preset = "default";  // or "ideal"
  model::PhysicalParams params;
  control::GateParams gate;
  dynamics::IntegratorConfig integrator;
  bool t_end_given = false;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string out_dir = "out";

  PhaseSweepSection phase_sweep;
  PhotonShapeSection photon_shape;
  TomographySection tomography;
  EfficiencySection efficiency;
  TwoPhotonSection two_photon;
  MsGateSection ms_gate;
  ParityScanSection parity_scan;
  StarkDemoSection stark_demo;

  // Integrator span used by the experiment: t_end when given, otherwise
  // the experiment's natural span.
  double span() const;
};

// Parses a JSON document (comments allowed). Unknown keys, wrong types and
// invalid values throw ConfigError naming the field path.
Config parse_config(const nlohmann::json& doc, Experiment experiment);
Config load_config(const std::string& path, Experiment experiment);

// Every field after defaults and overrides, in the config schema.
nlohmann::json resolved_json(const Config& cfg);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace ioncavity::cli
