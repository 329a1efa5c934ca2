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

#include <string>
#include <vector>

#include "config.hpp"

namespace ioncavity::cli {

struct RunSummary {
  std::vector<std::string> outputs;  // file names relative to out_dir
  double wall_seconds = 0.0;
};

// Runs cfg.experiment and writes its outputs, config.resolved.json and
// manifest.json into cfg.out_dir. `config_text` is hashed into the manifest.
RunSummary run_experiment(const Config& cfg, const std::string& config_text);

}  // namespace ioncavity::cli
