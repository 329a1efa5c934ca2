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

#include <nlohmann/json.hpp>

#include "ioncavity/tomography/measurement.hpp"
#include "ioncavity/tomography/process.hpp"

namespace ioncavity::tomography {

// Complex entries are written as [re, im] pairs, matrices row-major.
nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const MeasurementRecord& r);
void from_json(const nlohmann::json& j, MeasurementRecord& r);
void to_json(nlohmann::json& j, const ProcessMatrix& p);
void from_json(const nlohmann::json& j, ProcessMatrix& p);

}  // namespace ioncavity::tomography
