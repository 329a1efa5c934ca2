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

#include "ioncavity/dynamics/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ioncavity/error.hpp"

namespace ioncavity::dynamics {

Trajectory::Trajectory(std::vector<double> times, double sample_interval, double bin_width)
    : times_(std::move(times)), sample_interval_(sample_interval), bin_width_(bin_width) {}

void Trajectory::add_series(std::string name, std::vector<double> values) {
  if (values.size() != times_.size()) {
    throw DimensionError("Trajectory: series '" + name + "' has " + std::to_string(values.size()) +
                         " samples, grid has " + std::to_string(times_.size()));
  }
  if (has_series(name)) throw ConfigError("Trajectory: duplicate series '" + name + "'");
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

bool Trajectory::has_series(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& Trajectory::series(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ConfigError("Trajectory: missing series '" + name + "'");
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

std::size_t Trajectory::index_of(double t) const {
  if (times_.empty() || sample_interval_ <= 0.0) throw ConfigError("Trajectory: empty grid");
  const double k = std::round(t / sample_interval_);
  if (std::abs(k * sample_interval_ - t) > 1e-6 * sample_interval_ || k < 0.0 ||
      k >= static_cast<double>(times_.size())) {
    throw ConfigError("Trajectory: time " + std::to_string(t) +
                      " s is not on the sample grid within [0, " + std::to_string(t_end()) + "]");
  }
  return static_cast<std::size_t>(k);
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "time_us";
  for (const auto& n : names_) out << ',' << n;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < times_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", times_[i] * 1e6);
    out << buf;
    for (const auto& c : columns_) {
      std::snprintf(buf, sizeof buf, "%.9g", c[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

double integrate_samples(const std::vector<double>& y, std::size_t i0, std::size_t i1, double h) {
  if (i1 < i0 || i1 >= y.size()) throw DimensionError("integrate_samples: bad index range");
  const std::size_t m = i1 - i0;
  if (m == 0) return 0.0;
  if (m == 1) return 0.5 * h * (y[i0] + y[i1]);
  auto simpson = [&](std::size_t a, std::size_t b) {
    double s = y[a] + y[b];
    for (std::size_t k = a + 1; k < b; ++k) s += ((k - a) % 2 ? 4.0 : 2.0) * y[k];
    return s * h / 3.0;
  };
  if (m % 2 == 0) return simpson(i0, i1);
  const std::size_t j = i1 - 3;
  const double tail = 3.0 * h / 8.0 * (y[j] + 3.0 * y[j + 1] + 3.0 * y[j + 2] + y[j + 3]);
  return (j > i0 ? simpson(i0, j) : 0.0) + tail;
}

}  // namespace ioncavity::dynamics
