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

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ioncavity/qcore/hilbert_space.hpp"

namespace ioncavity::qcore {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

// Operators on spaces larger than this are stored sparse.
inline constexpr std::size_t kSparseThreshold = 128;

class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace space, DenseMatrix matrix);
  Operator(HilbertSpace space, SparseMatrix matrix);

  const HilbertSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(matrix_); }

  DenseMatrix dense() const;
  SparseMatrix sparse() const;
  Complex element(std::size_t row, std::size_t col) const;

  Operator adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;
  // Frobenius norm.
  double norm() const;

  Vector apply(const Vector& v) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= Complex(s, 0.0); }
  friend Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }
  friend Operator operator-(Operator a) { return a *= Complex(-1.0, 0.0); }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  void settle();

  HilbertSpace space_;
  std::variant<DenseMatrix, SparseMatrix> matrix_;
};

Operator zero(const HilbertSpace& space);
Operator identity(const HilbertSpace& space);
Operator identity(std::size_t dim);
// |to><from| on a single factor of dimension `dim`.
Operator transition(std::size_t dim, std::size_t to, std::size_t from);
Operator projector(std::size_t dim, std::size_t level);

// Fock-space ladder operators with n_max photons (dimension n_max + 1).
Operator annihilation(std::size_t n_max);
Operator creation(std::size_t n_max);
Operator number(std::size_t n_max);

Operator tensor(std::span<const Operator> ops);
Operator tensor(const Operator& a, const Operator& b);
Operator embed(const Operator& op, std::size_t target_slot, const HilbertSpace& space);

Operator dagger(const Operator& op);
Operator commutator(const Operator& a, const Operator& b);

}  // namespace ioncavity::qcore
