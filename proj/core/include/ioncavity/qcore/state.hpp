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
#include <span>

#include "ioncavity/qcore/operator.hpp"

namespace ioncavity::qcore {

struct Tolerances {
  double norm = 1e-10;
  double trace = 1e-9;
  double hermitian = 1e-10;
  double min_eigenvalue = -1e-9;
};

class StateVector {
 public:
  StateVector() = default;
  StateVector(HilbertSpace space, Vector amplitudes);

  static StateVector basis(const HilbertSpace& space, std::span<const std::size_t> digits);
  static StateVector basis(const HilbertSpace& space, std::initializer_list<std::size_t> digits);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  bool is_normalized(double tol = Tolerances{}.norm) const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(Complex scale);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, StateVector b) {
    b.amplitudes_ = -b.amplitudes_;
    return a += b;
  }
  friend StateVector operator*(Complex s, StateVector a) { return a *= s; }

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

StateVector tensor(const StateVector& a, const StateVector& b);
StateVector apply(const Operator& op, const StateVector& psi);
Complex inner(const StateVector& a, const StateVector& b);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates against `tol`; throws NumericalError on violation.
  DensityMatrix(HilbertSpace space, DenseMatrix matrix, const Tolerances& tol = {});

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(const HilbertSpace& space);
  // Skips validation. For intermediate quantities inside integrators only.
  static DensityMatrix unchecked(HilbertSpace space, DenseMatrix matrix);

  const HilbertSpace& space() const { return space_; }
  const DenseMatrix& matrix() const { return matrix_; }
  Complex element(std::size_t row, std::size_t col) const;
  double population(std::size_t index) const;

  Complex trace() const { return matrix_.trace(); }
  double purity() const;
  double min_eigenvalue() const;
  // Returns an empty string when valid, otherwise a description of the failure.
  std::string check(const Tolerances& tol = {}) const;
  void validate(const Tolerances& tol = {}) const;

  DensityMatrix mixed_with(const DensityMatrix& other, double weight_other) const;

 private:
  HilbertSpace space_;
  DenseMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
Complex expectation(const DensityMatrix& rho, const Operator& op);
double fidelity(const DensityMatrix& rho, const StateVector& psi);
// Traces out the listed slots; the remaining factors keep their order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> slots);
DensityMatrix conjugate(const Operator& u, const DensityMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace ioncavity::qcore
