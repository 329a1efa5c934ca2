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

#include "ioncavity/tomography/process.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ioncavity/error.hpp"

namespace ioncavity::tomography {

namespace {

using C = std::complex<double>;

std::array<Matrix2, 4> make_paulis() {
  std::array<Matrix2, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, C(0, -1), C(0, 1), 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

// Columns (I (x) P_m)|Omega>, |Omega> = sum_i |i>|i>.
Matrix4 pauli_choi_vectors() {
  Matrix4 v = Matrix4::Zero();
  for (int m = 0; m < 4; ++m) {
    const Matrix2& s = pauli(static_cast<std::size_t>(m));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) v(2 * i + j, m) = s(j, i);
    }
  }
  return v;
}

const Matrix4& choi_vectors() {
  static const Matrix4 v = pauli_choi_vectors();
  return v;
}

}  // namespace

const Matrix2& pauli(std::size_t m) {
  static const std::array<Matrix2, 4> p = make_paulis();
  if (m >= 4) throw DimensionError("pauli: index out of range");
  return p[m];
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::HV: return "HV";
    case Basis::DA: return "DA";
    case Basis::RL: return "RL";
  }
  return "?";
}

Basis basis_from_string(const std::string& name) {
  if (name == "HV") return Basis::HV;
  if (name == "DA") return Basis::DA;
  if (name == "RL") return Basis::RL;
  throw ConfigError("basis: expected HV, DA or RL, got '" + name + "'");
}

Matrix2 basis_projector(Basis b, bool first) {
  Eigen::Vector2cd v;
  const double r = 1.0 / std::sqrt(2.0);
  switch (b) {
    case Basis::HV: v << 1, 0; break;
    case Basis::DA: v << r, r; break;
    case Basis::RL: v << r, C(0, r); break;
  }
  Matrix2 p = v * v.adjoint();
  return first ? p : Matrix2(Matrix2::Identity() - p);
}

Matrix2 input_density(const InputState& in) {
  Eigen::Vector2cd v;
  v << std::cos(in.alpha), std::polar(std::sin(in.alpha), in.beta);
  return v * v.adjoint();
}

ProcessMatrix::ProcessMatrix(const Matrix4& chi) : chi_(chi) { validate(); }

ProcessMatrix ProcessMatrix::identity() {
  Matrix4 c = Matrix4::Zero();
  c(0, 0) = 1.0;
  return ProcessMatrix(c);
}

ProcessMatrix ProcessMatrix::depolarizing() {
  return ProcessMatrix(Matrix4(Matrix4::Identity() * 0.25));
}

ProcessMatrix ProcessMatrix::from_unitary(const Matrix2& u) {
  if (!(u * u.adjoint()).isApprox(Matrix2::Identity(), 1e-10)) {
    throw ConfigError("ProcessMatrix::from_unitary: matrix is not unitary");
  }
  Eigen::Vector4cd c;
  for (std::size_t m = 0; m < 4; ++m) c(static_cast<int>(m)) = 0.5 * (pauli(m).adjoint() * u).trace();
  return ProcessMatrix(Matrix4(c * c.adjoint()));
}

ProcessMatrix ProcessMatrix::from_choi(const Matrix4& choi) {
  const Matrix4& v = choi_vectors();
  Matrix4 chi = v.adjoint() * choi * v / 4.0;
  chi = 0.5 * (chi + chi.adjoint()).eval();
  return ProcessMatrix(chi);
}

Matrix4 ProcessMatrix::choi() const {
  const Matrix4& v = choi_vectors();
  return v * chi_ * v.adjoint();
}

Matrix2 ProcessMatrix::apply(const Matrix2& rho) const {
  Matrix2 out = Matrix2::Zero();
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      const C c = chi_(static_cast<int>(m), static_cast<int>(n));
      if (c != C(0.0, 0.0)) out += c * pauli(m) * rho * pauli(n).adjoint();
    }
  }
  return out;
}

double ProcessMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(Matrix4(0.5 * (chi_ + chi_.adjoint())),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double ProcessMatrix::trace_preservation_error() const {
  Matrix2 s = Matrix2::Zero();
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      s += chi_(static_cast<int>(m), static_cast<int>(n)) * pauli(n).adjoint() * pauli(m);
    }
  }
  return (s - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

void ProcessMatrix::validate() const {
  const double herm = (chi_ - chi_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm <= 1e-9)) {
    throw NumericalError("ProcessMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double lo = min_eigenvalue();
  if (!(lo >= -1e-9)) {
    throw NumericalError("ProcessMatrix: negative eigenvalue " + std::to_string(lo));
  }
  const double tp = trace_preservation_error();
  if (!(tp <= 1e-6)) {
    throw NumericalError("ProcessMatrix: not trace preserving (deviation " + std::to_string(tp) +
                         ")");
  }
}

double process_fidelity(const ProcessMatrix& p) { return p.chi()(0, 0).real(); }

Matrix4 choi_from_outputs(const std::array<Matrix2, 4>& outputs) {
  const Matrix2& v = outputs[0];
  const Matrix2& h = outputs[1];
  const Matrix2& d = outputs[2];
  const Matrix2& r = outputs[3];
  const Matrix2 e01 = d + C(0, 1) * r - C(0.5, 0.5) * (h + v);
  const Matrix2 e10 = e01.adjoint();
  Matrix4 j;
  j.block<2, 2>(0, 0) = h;
  j.block<2, 2>(0, 2) = e01;
  j.block<2, 2>(2, 0) = e10;
  j.block<2, 2>(2, 2) = v;
  return j;
}

}  // namespace ioncavity::tomography
