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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ioncavity/dynamics/trajectory.hpp"
#include "ioncavity/model/builders.hpp"
#include "ioncavity/qcore/state.hpp"

namespace ioncavity::dynamics {

enum class Method { rk4, dopri5 };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct IntegratorConfig {
  double t_end = 6e-6;
  double dt = 5e-9;  // fixed step (rk4) or initial step (dopri5)
  Method method = Method::rk4;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double sample_interval = 1e-7;
  double bin_width = 1e-6;
  // Evolve only on the span of basis states reachable from the initial
  // support. Exact; the restricted space is invariant under the dynamics.
  bool restrict_to_reachable = true;
  double trace_tol = 1e-8;
  double min_eigenvalue_tol = -1e-8;
  // Positivity is checked on every n-th sample.
  std::size_t positivity_every = 1;

  void validate() const;
  std::size_t num_samples() const;
};

struct Observable {
  std::string name;
  qcore::Operator op;
  // Complex observables produce two series, name_re and name_im.
  bool complex_valued = false;
};

// Photon numbers per mode ("n_H", "n_V"), the polarization coherence <b^dag a>
// ("ba") for two-mode models and top-Fock populations ("top_H", "top_V").
std::vector<Observable> standard_observables(const model::LindbladModel& model);

// Modifies the sampled state before observables are taken; never fed back
// into the evolution. `basis` maps rows of `rho` to full-space indices.
using ObservationTransform =
    std::function<void(double t, std::span<const std::size_t> basis, qcore::DenseMatrix& rho)>;

struct EvolveDiagnostics {
  std::size_t evolved_dim = 0;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  double max_trace_deviation = 0.0;
  double min_eigenvalue = 1.0;
};

struct EvolveResult {
  Trajectory trajectory;
  qcore::DensityMatrix final_state;
  EvolveDiagnostics diagnostics;
};

// Integrates d rho/dt = -i[H, rho] + sum_k rate_k (L rho L^dag - {L^dag L, rho}/2).
// Throws NumericalError when the trace or positivity invariant is violated at
// a sample, or when the adaptive controller cannot meet its tolerance.
EvolveResult evolve(const model::LindbladModel& model, const qcore::DensityMatrix& rho0,
                    const IntegratorConfig& cfg, std::span<const Observable> observables,
                    const ObservationTransform& transform = {});

// Indices of basis states reachable from the support of rho0.
std::vector<std::size_t> reachable_subspace(const model::LindbladModel& model,
                                            const qcore::DensityMatrix& rho0);

}  // namespace ioncavity::dynamics
