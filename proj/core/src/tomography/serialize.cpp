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

#include "ioncavity/tomography/serialize.hpp"

#include "ioncavity/error.hpp"

namespace ioncavity::tomography {

nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ConfigError("complex matrix: expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("complex matrix: ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw ConfigError("complex matrix: entries must be [re, im]");
      m(i, k) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

void to_json(nlohmann::json& j, const MeasurementRecord& r) {
  j = nlohmann::json{{"input", {{"alpha", r.input.alpha}, {"beta", r.input.beta}}},
                     {"basis", to_string(r.basis)},
                     {"detector_swap", r.detector_swap},
                     {"n_first", r.n_first},
                     {"n_second", r.n_second},
                     {"attempts", r.attempts}};
}

void from_json(const nlohmann::json& j, MeasurementRecord& r) {
  r.input.alpha = j.at("input").at("alpha").get<double>();
  r.input.beta = j.at("input").at("beta").get<double>();
  r.basis = basis_from_string(j.at("basis").get<std::string>());
  r.detector_swap = j.at("detector_swap").get<bool>();
  r.n_first = j.at("n_first").get<std::int64_t>();
  r.n_second = j.at("n_second").get<std::int64_t>();
  r.attempts = j.at("attempts").get<std::int64_t>();
  r.validate();
}

void to_json(nlohmann::json& j, const ProcessMatrix& p) {
  j = nlohmann::json{{"basis", {"I", "X", "Y", "Z"}}, {"chi", complex_matrix_to_json(p.chi())}};
}

void from_json(const nlohmann::json& j, ProcessMatrix& p) {
  const Eigen::MatrixXcd m = complex_matrix_from_json(j.at("chi"));
  if (m.rows() != 4 || m.cols() != 4) throw ConfigError("chi: expected a 4x4 matrix");
  p = ProcessMatrix(Matrix4(m));
}

}  // namespace ioncavity::tomography
