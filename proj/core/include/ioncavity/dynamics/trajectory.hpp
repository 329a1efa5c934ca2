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
#include <ostream>
#include <string>
#include <vector>

namespace ioncavity::dynamics {

// Uniformly sampled expectation values, one column per named series.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<double> times, double sample_interval, double bin_width);

  const std::vector<double>& times() const { return times_; }
  double sample_interval() const { return sample_interval_; }
  double bin_width() const { return bin_width_; }
  double t_end() const { return times_.empty() ? 0.0 : times_.back(); }
  // Values are per preparation attempt (probabilities, mean photon numbers).
  bool attempts_normalization() const { return true; }

  void add_series(std::string name, std::vector<double> values);
  bool has_series(const std::string& name) const;
  // Throws ConfigError when absent.
  const std::vector<double>& series(const std::string& name) const;
  const std::vector<std::string>& names() const { return names_; }

  // Sample index for time t; throws ConfigError when t is off-grid.
  std::size_t index_of(double t) const;

  // Header time_us then one column per series, 9 significant digits.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<double> times_;
  double sample_interval_ = 0.0;
  double bin_width_ = 0.0;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

// Integral of uniformly spaced samples y[i0..i1] with spacing h: composite
// Simpson, with a 3/8 panel when the interval count is odd.
double integrate_samples(const std::vector<double>& y, std::size_t i0, std::size_t i1, double h);

}  // namespace ioncavity::dynamics
