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

#include "ioncavity/qcore/operator.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "ioncavity/error.hpp"

namespace ioncavity::qcore {

namespace {

void require_shape(const HilbertSpace& space, Eigen::Index rows, Eigen::Index cols) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (rows != d || cols != d) {
    throw DimensionError("Operator: matrix is " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " but space " + space.to_string() +
                         " has dimension " + std::to_string(d));
  }
}

bool wants_sparse(const HilbertSpace& space) { return space.dim() > kSparseThreshold; }

}  // namespace

Operator::Operator(HilbertSpace space, DenseMatrix matrix) : space_(std::move(space)) {
  require_shape(space_, matrix.rows(), matrix.cols());
  matrix_ = std::move(matrix);
  settle();
}

Operator::Operator(HilbertSpace space, SparseMatrix matrix) : space_(std::move(space)) {
  require_shape(space_, matrix.rows(), matrix.cols());
  matrix.makeCompressed();
  matrix_ = std::move(matrix);
  settle();
}

void Operator::settle() {
  if (wants_sparse(space_) && !is_sparse()) {
    SparseMatrix s = std::get<DenseMatrix>(matrix_).sparseView();
    s.makeCompressed();
    matrix_ = std::move(s);
  } else if (!wants_sparse(space_) && is_sparse()) {
    matrix_ = DenseMatrix(std::get<SparseMatrix>(matrix_));
  }
}

DenseMatrix Operator::dense() const {
  if (is_sparse()) return DenseMatrix(std::get<SparseMatrix>(matrix_));
  return std::get<DenseMatrix>(matrix_);
}

SparseMatrix Operator::sparse() const {
  if (is_sparse()) return std::get<SparseMatrix>(matrix_);
  SparseMatrix s = std::get<DenseMatrix>(matrix_).sparseView();
  s.makeCompressed();
  return s;
}

Complex Operator::element(std::size_t row, std::size_t col) const {
  if (row >= dim() || col >= dim()) throw DimensionError("Operator::element: index out of range");
  const auto r = static_cast<Eigen::Index>(row);
  const auto c = static_cast<Eigen::Index>(col);
  if (is_sparse()) return std::get<SparseMatrix>(matrix_).coeff(r, c);
  return std::get<DenseMatrix>(matrix_)(r, c);
}

Operator Operator::adjoint() const {
  if (is_sparse()) {
    return Operator(space_, SparseMatrix(std::get<SparseMatrix>(matrix_).adjoint()));
  }
  return Operator(space_, DenseMatrix(std::get<DenseMatrix>(matrix_).adjoint()));
}

bool Operator::is_hermitian(double tol) const {
  if (is_sparse()) {
    const auto& m = std::get<SparseMatrix>(matrix_);
    SparseMatrix diff = m - SparseMatrix(m.adjoint());
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
        if (std::abs(it.value()) > tol) return false;
      }
    }
    return true;
  }
  const auto& m = std::get<DenseMatrix>(matrix_);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  DenseMatrix m = dense();
  DenseMatrix prod = m.adjoint() * m;
  return (prod - DenseMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

double Operator::norm() const {
  if (is_sparse()) return std::get<SparseMatrix>(matrix_).norm();
  return std::get<DenseMatrix>(matrix_).norm();
}

Vector Operator::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) {
    throw DimensionError("Operator::apply: vector length does not match " + space_.to_string());
  }
  if (is_sparse()) return std::get<SparseMatrix>(matrix_) * v;
  return std::get<DenseMatrix>(matrix_) * v;
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator +");
  if (is_sparse()) {
    std::get<SparseMatrix>(matrix_) += other.sparse();
  } else {
    std::get<DenseMatrix>(matrix_) += other.dense();
  }
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator -");
  if (is_sparse()) {
    std::get<SparseMatrix>(matrix_) -= other.sparse();
  } else {
    std::get<DenseMatrix>(matrix_) -= other.dense();
  }
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  std::visit([scale](auto& m) { m *= scale; }, matrix_);
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a.space_, b.space_, "Operator *");
  if (a.is_sparse()) {
    SparseMatrix p = std::get<SparseMatrix>(a.matrix_) * b.sparse();
    p.prune(Complex(0.0, 0.0));
    return Operator(a.space_, std::move(p));
  }
  return Operator(a.space_, DenseMatrix(std::get<DenseMatrix>(a.matrix_) * b.dense()));
}

Operator zero(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (wants_sparse(space)) return Operator(space, SparseMatrix(d, d));
  return Operator(space, DenseMatrix::Zero(d, d));
}

Operator identity(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (wants_sparse(space)) {
    SparseMatrix s(d, d);
    s.setIdentity();
    return Operator(space, std::move(s));
  }
  return Operator(space, DenseMatrix::Identity(d, d));
}

Operator identity(std::size_t dim) { return identity(HilbertSpace{dim}); }

Operator transition(std::size_t dim, std::size_t to, std::size_t from) {
  if (to >= dim || from >= dim) {
    throw DimensionError("transition: level out of range for dimension " + std::to_string(dim));
  }
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
  return Operator(HilbertSpace{dim}, std::move(m));
}

Operator projector(std::size_t dim, std::size_t level) { return transition(dim, level, level); }

Operator annihilation(std::size_t n_max) {
  if (n_max < 1) throw DimensionError("annihilation: n_max must be >= 1");
  const auto d = static_cast<Eigen::Index>(n_max + 1);
  DenseMatrix m = DenseMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(HilbertSpace{n_max + 1}, std::move(m));
}

Operator creation(std::size_t n_max) { return annihilation(n_max).adjoint(); }

Operator number(std::size_t n_max) { return creation(n_max) * annihilation(n_max); }

Operator tensor(const Operator& a, const Operator& b) {
  HilbertSpace space = a.space().concat(b.space());
  if (wants_sparse(space) || a.is_sparse() || b.is_sparse()) {
    SparseMatrix k = Eigen::kroneckerProduct(a.sparse(), b.sparse()).eval();
    return Operator(std::move(space), std::move(k));
  }
  DenseMatrix k = Eigen::kroneckerProduct(a.dense(), b.dense()).eval();
  return Operator(std::move(space), std::move(k));
}

Operator tensor(std::span<const Operator> ops) {
  if (ops.empty()) return Operator(HilbertSpace{}, DenseMatrix::Identity(1, 1));
  Operator out = ops[0];
  for (std::size_t k = 1; k < ops.size(); ++k) out = tensor(out, ops[k]);
  return out;
}

Operator embed(const Operator& op, std::size_t target_slot, const HilbertSpace& space) {
  if (op.dim() != space.factor(target_slot)) {
    throw DimensionError("embed: operator dimension " + std::to_string(op.dim()) +
                         " does not match factor " + std::to_string(space.factor(target_slot)) +
                         " in slot " + std::to_string(target_slot) + " of " + space.to_string());
  }
  std::size_t before = 1;
  std::size_t after = 1;
  for (std::size_t k = 0; k < space.num_factors(); ++k) {
    if (k < target_slot) before *= space.factor(k);
    if (k > target_slot) after *= space.factor(k);
  }
  // Build with triplets so large spaces never materialize dense.
  const SparseMatrix local = op.sparse();
  const std::size_t d = op.dim();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(local.nonZeros()) * before * after);
  for (std::size_t b = 0; b < before; ++b) {
    for (Eigen::Index col = 0; col < local.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(local, col); it; ++it) {
        for (std::size_t a = 0; a < after; ++a) {
          const auto r = static_cast<Eigen::Index>((b * d + static_cast<std::size_t>(it.row())) * after + a);
          const auto c = static_cast<Eigen::Index>((b * d + static_cast<std::size_t>(it.col())) * after + a);
          trips.emplace_back(r, c, it.value());
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(space.dim());
  SparseMatrix full(n, n);
  full.setFromTriplets(trips.begin(), trips.end());
  return Operator(space, std::move(full));
}

Operator dagger(const Operator& op) { return op.adjoint(); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

}  // namespace ioncavity::qcore
