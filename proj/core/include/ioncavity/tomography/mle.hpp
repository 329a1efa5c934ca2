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
#include <span>
#include <vector>

#include "ioncavity/tomography/measurement.hpp"
#include "ioncavity/tomography/process.hpp"

namespace ioncavity::tomography {

struct MleOptions {
  std::size_t max_iterations = 5000;
  double rel_tol = 1e-10;
};

struct MleResult {
  ProcessMatrix process;
  double log_likelihood = 0.0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  // Objective after every accepted iteration.
  std::vector<double> history;
};

// Maximum-likelihood process over the set of trace-preserving CP maps,
// J = N(T^dag T) with N fixing the input marginal to the identity. Starts
// at the depolarizing map. Throws ConfigError when an input or basis is
// missing and NumericalError after the iteration cap.
MleResult mle_process(std::span<const MeasurementRecord> records, const MleOptions& opt = {});

// Log-likelihood of a process on the records (conditional on detection).
double log_likelihood(const ProcessMatrix& process, std::span<const MeasurementRecord> records);

// Gradient of the objective with respect to T (as d/dRe + i d/dIm), exposed
// for testing. `t` is the 4x4 factor.
Matrix4 mle_gradient(const Matrix4& t, std::span<const MeasurementRecord> records);
double mle_objective(const Matrix4& t, std::span<const MeasurementRecord> records);

struct StateResult {
  Matrix2 rho = Matrix2::Zero();
  double log_likelihood = 0.0;
  std::size_t iterations = 0;
};
// Single-qubit MLE state, rho = T^dag T / Tr, from one input's records.
StateResult state_tomography(std::span<const MeasurementRecord> records,
                             const MleOptions& opt = {});

struct BootstrapResult {
  double std_error = 0.0;
  double mean = 0.0;
  std::size_t used = 0;
  std::size_t skipped = 0;
};
// Parametric resampling from the empirical multinomial of every record.
// Resample r uses derive_seed(seed, r). Needs resamples >= 100; failed fits
// are skipped, more than 5% skips throws NumericalError.
BootstrapResult bootstrap(std::span<const MeasurementRecord> records, std::size_t resamples,
                          std::uint64_t seed, std::size_t threads = 1,
                          const MleOptions& opt = {});

}  // namespace ioncavity::tomography
