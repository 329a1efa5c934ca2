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

#include "ioncavity/model/params.hpp"

#include <cmath>
#include <limits>

#include "ioncavity/error.hpp"

namespace ioncavity::model {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw ConfigError(std::string("params.") + field + ": " + rule);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void PhysicalParams::validate() const {
  const struct {
    const char* name;
    double value;
  } rates[] = {{"g_PD", g_PD},
               {"kappa", kappa},
               {"gamma", gamma},
               {"Omega_SD", Omega_SD},
               {"Omega_SpD", Omega_SpD},
               {"laser_linewidth", laser_linewidth},
               {"dark_rate_1", dark_rate_1},
               {"dark_rate_2", dark_rate_2},
               {"B", B},
               {"xi_SD", xi_SD},
               {"xi_SpD", xi_SpD},
               {"ion_separation", ion_separation}};
  for (const auto& r : rates) {
    require(finite(r.value) && r.value >= 0.0, r.name, "must be finite and >= 0");
  }
  require(finite(Delta) && Delta != 0.0, "Delta", "must be finite and nonzero");
  require(finite(raman_wavelength) && raman_wavelength > 0.0, "raman_wavelength", "must be > 0");
  require(finite(raman_angle), "raman_angle", "must be finite");
  require(branching_PS >= 0.0 && branching_PS <= 1.0, "branching_PS", "must lie in [0,1]");
  require(branching_same_sublevel >= 0.0 && branching_same_sublevel <= 1.0,
          "branching_same_sublevel", "must lie in [0,1]");
  require(detection_efficiency > 0.0 && detection_efficiency <= 1.0, "detection_efficiency",
          "must lie in (0,1]");
  require(coupling_asymmetry >= 0.0 && coupling_asymmetry <= 1.0, "coupling_asymmetry",
          "must lie in [0,1]");
  require(weaker_ion == 1 || weaker_ion == 2, "weaker_ion", "must be 1 or 2");
  require(tau_SSp > 0.0, "tau_SSp", "must be > 0");
  require(tau_SD > 0.0, "tau_SD", "must be > 0");
  require(prep_error_SS_DD >= 0.0 && prep_error_SS_DD <= 1.0, "prep_error_SS_DD",
          "must lie in [0,1]");
  require(prep_error_single >= 0.0 && prep_error_single <= 1.0, "prep_error_single",
          "must lie in [0,1]");
  require(coherence_scale >= 0.0 && coherence_scale <= 1.0, "coherence_scale",
          "must lie in [0,1]");
  if (zeta) require(finite(*zeta), "zeta", "must be finite");
}

PhysicalParams PhysicalParams::ideal() const {
  PhysicalParams p = *this;
  p.coupling_asymmetry = 1.0;
  p.gamma = 0.0;
  p.laser_linewidth = 0.0;
  p.prep_error_SS_DD = 0.0;
  p.prep_error_single = 0.0;
  p.coherence_scale = 1.0;
  p.tau_SSp = std::numeric_limits<double>::infinity();
  p.tau_SD = std::numeric_limits<double>::infinity();
  p.dark_rate_1 = 0.0;
  p.dark_rate_2 = 0.0;
  return p;
}

double PhysicalParams::coupling_weight(int ion) const {
  if (ion != 1 && ion != 2) throw ConfigError("coupling_weight: ion must be 1 or 2");
  return ion == weaker_ion ? coupling_asymmetry : 1.0;
}

std::string to_string(DriveMode mode) {
  return mode == DriveMode::monochromatic ? "monochromatic" : "bichromatic";
}

DriveMode drive_mode_from_string(const std::string& name) {
  if (name == "monochromatic") return DriveMode::monochromatic;
  if (name == "bichromatic") return DriveMode::bichromatic;
  throw ConfigError("drive mode must be 'monochromatic' or 'bichromatic', got '" + name + "'");
}

}  // namespace ioncavity::model
