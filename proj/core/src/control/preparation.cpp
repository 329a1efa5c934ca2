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

#include "ioncavity/control/preparation.hpp"

#include <cmath>
#include <complex>

#include "ioncavity/error.hpp"
#include "ioncavity/model/levels.hpp"

namespace ioncavity::control {

using qcore::Complex;
using qcore::DenseMatrix;
using qcore::DensityMatrix;
using qcore::StateVector;
namespace lv = model::level;

std::string to_string(StateLabel label) {
  switch (label) {
    case StateLabel::Psi: return "Psi";
    case StateLabel::PsiPlus: return "Psi+";
    case StateLabel::Phi: return "Phi";
    case StateLabel::psi1: return "psi1";
    case StateLabel::psi2: return "psi2";
    case StateLabel::SS: return "SS";
    case StateLabel::custom: return "custom";
  }
  return "custom";
}

const qcore::HilbertSpace& ion_pair_space() {
  static const qcore::HilbertSpace space{model::kEffectiveIonLevels, model::kEffectiveIonLevels};
  return space;
}

StateVector ion_pair_ket(std::size_t level1, std::size_t level2) {
  return StateVector::basis(ion_pair_space(), {level1, level2});
}

namespace {

DensityMatrix projector_of(const StateVector& v) { return DensityMatrix::pure(v); }

DensityMatrix with_ss_dd_error(const DensityMatrix& ideal, double error) {
  const DenseMatrix ss = projector_of(ion_pair_ket(lv::S, lv::S)).matrix();
  const DenseMatrix dd = projector_of(ion_pair_ket(lv::D, lv::D)).matrix();
  return DensityMatrix(ion_pair_space(),
                       (1.0 - error) * ideal.matrix() + 0.5 * error * (ss + dd));
}

}  // namespace

PreparedState prepare_psi_phi(double phi, const model::PhysicalParams& params, bool noisy) {
  const StateVector psi =
      (std::sqrt(0.5) * (ion_pair_ket(lv::S, lv::D) +
                         std::exp(Complex(0.0, phi)) * ion_pair_ket(lv::D, lv::S)));
  PreparedState out;
  out.label = StateLabel::Psi;
  out.phi = phi;
  out.rho = DensityMatrix::pure(psi);
  if (noisy) {
    out.rho = with_ss_dd_error(out.rho, params.prep_error_SS_DD);
    out.fidelity_target = 1.0 - params.prep_error_SS_DD;
  }
  return out;
}

PreparedState prepare_phi() {
  const StateVector v = std::sqrt(0.5) * (ion_pair_ket(lv::S, lv::S) +
                                          Complex(0.0, 1.0) * ion_pair_ket(lv::D, lv::D));
  PreparedState out;
  out.label = StateLabel::Phi;
  out.rho = DensityMatrix::pure(v);
  return out;
}

PreparedState prepare_psi_plus() {
  PreparedState out = prepare_psi_phi(0.0, model::PhysicalParams{}, false);
  out.label = StateLabel::PsiPlus;
  return out;
}

PreparedState prepare_single_ion(int which, const model::PhysicalParams& params, bool noisy) {
  if (which != 1 && which != 2) throw ConfigError("prepare_single_ion: which must be 1 or 2");
  PreparedState out;
  out.label = which == 1 ? StateLabel::psi1 : StateLabel::psi2;
  const StateVector v = which == 1 ? ion_pair_ket(lv::S, lv::Dp) : ion_pair_ket(lv::Dp, lv::S);
  out.rho = DensityMatrix::pure(v);
  if (noisy) {
    const DenseMatrix ss = DensityMatrix::pure(ion_pair_ket(lv::S, lv::S)).matrix();
    out.rho = DensityMatrix(ion_pair_space(), (1.0 - params.prep_error_single) * out.rho.matrix() +
                                                  params.prep_error_single * ss);
    out.fidelity_target = 1.0 - params.prep_error_single;
  }
  return out;
}

qcore::Operator superposition_unitary(double alpha, double beta, std::size_t ion_levels) {
  if (ion_levels < 2) throw DimensionError("superposition_unitary: need S and S' levels");
  const auto n = static_cast<Eigen::Index>(ion_levels);
  DenseMatrix m = DenseMatrix::Identity(n, n);
  const Complex e = std::exp(Complex(0.0, beta));
  m(lv::S, lv::S) = std::cos(alpha);
  m(lv::Sp, lv::S) = e * std::sin(alpha);
  m(lv::S, lv::Sp) = -std::conj(e) * std::sin(alpha);
  m(lv::Sp, lv::Sp) = std::cos(alpha);
  return qcore::Operator(qcore::HilbertSpace{ion_levels}, std::move(m));
}

PreparedState prepare_superposition(double alpha, double beta, const PreparedState& base) {
  const auto& space = base.rho.space();
  if (space.num_factors() != 2) throw DimensionError("prepare_superposition: need two ions");
  double s_pop = 0.0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto d = space.unflatten(i);
    if (d[0] == lv::S || d[1] == lv::S) s_pop += base.rho.population(i);
  }
  if (s_pop <= 0.0) throw ConfigError("prepare_superposition: base state has no |S> population");
  const qcore::Operator u1 = superposition_unitary(alpha, beta, space.factor(0));
  const qcore::Operator u = qcore::tensor(u1, superposition_unitary(alpha, beta, space.factor(1)));
  PreparedState out = base;
  out.label = StateLabel::custom;
  out.alpha = alpha;
  out.beta = beta;
  out.rho = DensityMatrix(space, qcore::conjugate(u, base.rho).matrix());
  return out;
}

}  // namespace ioncavity::control
