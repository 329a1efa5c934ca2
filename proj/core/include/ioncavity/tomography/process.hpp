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

#include <array>
#include <string>

#include <Eigen/Dense>

namespace ioncavity::tomography {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

// Pauli operators in the order I, X, Y, Z on the photonic qubit with
// |H> = |0>, |V> = |1>.
const Matrix2& pauli(std::size_t m);

enum class Basis { HV, DA, RL };
inline constexpr std::array<Basis, 3> kBases{Basis::HV, Basis::DA, Basis::RL};
std::string to_string(Basis b);
Basis basis_from_string(const std::string& name);

// Projector onto the first (H, D, R) or second (V, A, L) outcome, with
// D = (H + V)/sqrt(2) and R = (H + iV)/sqrt(2).
Matrix2 basis_projector(Basis b, bool first);

// Input qubit cos(alpha)|0> + e^{i beta} sin(alpha)|1>.
struct InputState {
  double alpha = 0.0;
  double beta = 0.0;
};
// V, H, D, R.
inline constexpr std::array<InputState, 4> kStandardInputs{
    InputState{1.5707963267948966, 0.0}, InputState{0.0, 0.0}, InputState{0.7853981633974483, 0.0},
    InputState{0.7853981633974483, 1.5707963267948966}};
Matrix2 input_density(const InputState& in);

// chi in the Pauli basis, E(rho) = sum_mn chi_mn P_m rho P_n^dag.
class ProcessMatrix {
 public:
  ProcessMatrix() = default;
  // Validates on construction.
  explicit ProcessMatrix(const Matrix4& chi);

  static ProcessMatrix identity();
  static ProcessMatrix depolarizing();
  static ProcessMatrix from_unitary(const Matrix2& u);
  // J = sum_ij |i><j| (x) E(|i><j|), input factor first.
  static ProcessMatrix from_choi(const Matrix4& choi);

  const Matrix4& chi() const { return chi_; }
  Matrix4 choi() const;
  Matrix2 apply(const Matrix2& rho) const;

  // Throws NumericalError unless Hermitian (1e-9), PSD (min eigenvalue
  // >= -1e-9) and trace preserving (1e-6).
  void validate() const;
  double min_eigenvalue() const;
  double trace_preservation_error() const;

 private:
  Matrix4 chi_ = Matrix4::Zero();
};

// Re chi_00.
double process_fidelity(const ProcessMatrix& p);

// Choi matrix from the four standard-input output states (normalized),
// ordered V, H, D, R as in kStandardInputs.
Matrix4 choi_from_outputs(const std::array<Matrix2, 4>& outputs);

}  // namespace ioncavity::tomography
