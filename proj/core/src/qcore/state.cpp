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

#include "ioncavity/qcore/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ioncavity/error.hpp"

namespace ioncavity::qcore {

StateVector::StateVector(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw DimensionError("StateVector: " + std::to_string(amplitudes_.size()) +
                         " amplitudes for space " + space_.to_string());
  }
}

StateVector StateVector::basis(const HilbertSpace& space, std::span<const std::size_t> digits) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(space.flatten(digits))) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector StateVector::basis(const HilbertSpace& space, std::initializer_list<std::size_t> digits) {
  return basis(space, std::span<const std::size_t>(digits.begin(), digits.size()));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericalError("StateVector::normalized: zero vector");
  return StateVector(space_, amplitudes_ / n);
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

StateVector& StateVector::operator+=(const StateVector& other) {
  require_same_space(space_, other.space_, "StateVector +");
  amplitudes_ += other.amplitudes_;
  return *this;
}

StateVector& StateVector::operator*=(Complex scale) {
  amplitudes_ *= scale;
  return *this;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const Vector& x = a.amplitudes();
  const Vector& y = b.amplitudes();
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return StateVector(a.space().concat(b.space()), std::move(out));
}

StateVector apply(const Operator& op, const StateVector& psi) {
  require_same_space(op.space(), psi.space(), "apply");
  return StateVector(psi.space(), op.apply(psi.amplitudes()));
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_space(a.space(), b.space(), "inner");
  return a.amplitudes().dot(b.amplitudes());
}

DensityMatrix::DensityMatrix(HilbertSpace space, DenseMatrix matrix, const Tolerances& tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("DensityMatrix: matrix shape does not match space " + space_.to_string());
  }
  validate(tol);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(psi.space(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return DensityMatrix(space, DenseMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::unchecked(HilbertSpace space, DenseMatrix matrix) {
  DensityMatrix out;
  out.space_ = std::move(space);
  out.matrix_ = std::move(matrix);
  return out;
}

Complex DensityMatrix::element(std::size_t row, std::size_t col) const {
  return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

double DensityMatrix::population(std::size_t index) const { return element(index, index).real(); }

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  DenseMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::string DensityMatrix::check(const Tolerances& tol) const {
  std::ostringstream out;
  const Complex tr = trace();
  if (std::abs(tr.real() - 1.0) > tol.trace || std::abs(tr.imag()) > tol.trace) {
    out << "trace " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag())
        << "i deviates from 1; ";
  }
  const double herm = matrix_.size() ? (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (herm > tol.hermitian) out << "non-Hermitian by " << herm << "; ";
  const double lo = min_eigenvalue();
  if (lo < tol.min_eigenvalue) out << "min eigenvalue " << lo << "; ";
  return out.str();
}

void DensityMatrix::validate(const Tolerances& tol) const {
  const std::string msg = check(tol);
  if (!msg.empty()) throw NumericalError("DensityMatrix invalid: " + msg);
}

DensityMatrix DensityMatrix::mixed_with(const DensityMatrix& other, double weight_other) const {
  require_same_space(space_, other.space_, "DensityMatrix::mixed_with");
  if (weight_other < 0.0 || weight_other > 1.0) {
    throw ConfigError("DensityMatrix::mixed_with: weight must lie in [0,1]");
  }
  return DensityMatrix(space_, (1.0 - weight_other) * matrix_ + weight_other * other.matrix_);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Operator k = tensor(Operator(a.space(), a.matrix()), Operator(b.space(), b.matrix()));
  return DensityMatrix(k.space(), k.dense());
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  require_same_space(rho.space(), op.space(), "expectation");
  if (op.is_sparse()) {
    // Tr(rho O) = sum_{ij} rho_ji O_ij
    const SparseMatrix s = op.sparse();
    Complex acc(0.0, 0.0);
    for (Eigen::Index col = 0; col < s.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(s, col); it; ++it) {
        acc += rho.matrix()(it.col(), it.row()) * it.value();
      }
    }
    return acc;
  }
  return (rho.matrix().transpose().cwiseProduct(op.dense())).sum();
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  require_same_space(rho.space(), psi.space(), "fidelity");
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> slots) {
  const HilbertSpace& full = rho.space();
  HilbertSpace kept = full.without(slots);
  std::vector<std::size_t> traced_factors;
  for (std::size_t s = 0; s < full.num_factors(); ++s) {
    if (std::find(slots.begin(), slots.end(), s) != slots.end()) {
      traced_factors.push_back(full.factor(s));
    }
  }
  HilbertSpace traced(traced_factors);

  // Group full indices by their traced-out digits.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(traced.dim());
  std::vector<std::size_t> kd;
  std::vector<std::size_t> td;
  for (std::size_t i = 0; i < full.dim(); ++i) {
    const auto digits = full.unflatten(i);
    kd.clear();
    td.clear();
    for (std::size_t s = 0; s < digits.size(); ++s) {
      if (std::find(slots.begin(), slots.end(), s) != slots.end()) {
        td.push_back(digits[s]);
      } else {
        kd.push_back(digits[s]);
      }
    }
    groups[traced.flatten(td)].emplace_back(kept.flatten(kd), i);
  }
  const auto n = static_cast<Eigen::Index>(kept.dim());
  DenseMatrix out = DenseMatrix::Zero(n, n);
  for (const auto& g : groups) {
    for (const auto& [ka, fa] : g) {
      for (const auto& [kb, fb] : g) {
        out(static_cast<Eigen::Index>(ka), static_cast<Eigen::Index>(kb)) +=
            rho.matrix()(static_cast<Eigen::Index>(fa), static_cast<Eigen::Index>(fb));
      }
    }
  }
  return DensityMatrix::unchecked(std::move(kept), std::move(out));
}

DensityMatrix conjugate(const Operator& u, const DensityMatrix& rho) {
  require_same_space(u.space(), rho.space(), "conjugate");
  const DenseMatrix m = u.dense();
  return DensityMatrix::unchecked(rho.space(), m * rho.matrix() * m.adjoint());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  DenseMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

}  // namespace ioncavity::qcore
