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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ioncavity/error.hpp"
#include "ioncavity/qcore/operator.hpp"
#include "ioncavity/qcore/state.hpp"

namespace ioncavity::qcore {
namespace {

DenseMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  DenseMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

TEST(HilbertSpace, DimensionAndDigits) {
  HilbertSpace s{6, 6, 3, 3};
  EXPECT_EQ(s.dim(), 324u);
  const std::vector<std::size_t> digits{2, 5, 1, 0};
  const auto idx = s.flatten(digits);
  EXPECT_EQ(idx, ((2u * 6 + 5) * 3 + 1) * 3 + 0);
  EXPECT_EQ(s.unflatten(idx), digits);
  EXPECT_EQ(s.digit(idx, 1), 5u);
}

TEST(HilbertSpace, RejectsZeroFactor) { EXPECT_THROW((HilbertSpace{2, 0}), DimensionError); }

TEST(Tensor, IdentityTimesIdentity) {
  const auto t = tensor(identity(2), identity(3));
  EXPECT_EQ(t.space(), (HilbertSpace{2, 3}));
  EXPECT_LT((t.dense() - DenseMatrix::Identity(6, 6)).norm(), 1e-15);
}

TEST(Tensor, CreationOnFirstFactor) {
  const auto t = tensor(creation(2), identity(2));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(std::abs(t.element(1 * 2 + k, 0 * 2 + k) - Complex(1.0)), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(t.element(1 * 2 + 0, 0 * 2 + 1)), 0.0, 1e-15);
}

TEST(Tensor, Associative) {
  std::mt19937_64 rng(3);
  const Operator x({2}, random_matrix(2, rng)), y({3}, random_matrix(3, rng)), z({2}, random_matrix(2, rng));
  const auto a = tensor(tensor(x, y), z), b = tensor(x, tensor(y, z));
  EXPECT_EQ(a.space(), b.space());
  EXPECT_LT((a.dense() - b.dense()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Embed, LoweringActsOnTargetOnly) {
  const HilbertSpace s{2, 2};
  const auto lower = embed(transition(2, 0, 1), 0, s);
  const auto out = apply(lower, StateVector::basis(s, {1, 0}));
  EXPECT_NEAR(std::abs(inner(out, StateVector::basis(s, {0, 0})) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_LT(apply(lower, StateVector::basis(s, {0, 1})).norm(), 1e-15);
}

TEST(Embed, AnnihilatesVacuum) {
  const HilbertSpace s{6, 6, 3};
  const auto a = embed(annihilation(2), 2, s);
  EXPECT_LT(apply(a, StateVector::basis(s, {3, 1, 0})).norm(), 1e-15);
}

TEST(Embed, DifferentSlotsCommute) {
  std::mt19937_64 rng(5);
  const HilbertSpace s{3, 2, 4};
  const Operator x({3}, random_matrix(3, rng)), y({4}, random_matrix(4, rng));
  EXPECT_LT(commutator(embed(x, 0, s), embed(y, 2, s)).norm(), 1e-12);
}

TEST(Embed, DimensionMismatchThrows) {
  EXPECT_THROW(embed(identity(3), 0, HilbertSpace{2, 2}), DimensionError);
}

TEST(Ladder, DefiningRelations) {
  const auto a = annihilation(2);
  const HilbertSpace f{3};
  const auto out = apply(a, StateVector::basis(f, {2}));
  EXPECT_NEAR(std::abs(out.amplitude(1) - Complex(std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_LT(apply(a, StateVector::basis(f, {0})).norm(), 1e-15);
  const DenseMatrix c = commutator(a, creation(2)).dense();
  for (Eigen::Index n = 0; n < 2; ++n) {
    for (Eigen::Index m = 0; m < 2; ++m) {
      EXPECT_NEAR(std::abs(c(n, m) - Complex(n == m ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(Expectation, FockAndThermal) {
  const HilbertSpace f{3};
  EXPECT_NEAR(expectation(DensityMatrix::pure(StateVector::basis(f, {1})), number(2)).real(), 1.0, 1e-15);
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m(0, 0) = 0.7;
  m(1, 1) = 0.3;
  const DensityMatrix rho(f, m);
  const auto e = expectation(rho, number(2));
  EXPECT_NEAR(e.real(), 0.3, 1e-15);
  EXPECT_NEAR(e.imag(), 0.0, 1e-15);
  EXPECT_NEAR(expectation(rho, identity(f)).real(), 1.0, 1e-15);
}

TEST(Expectation, SpaceMismatchThrows) {
  EXPECT_THROW(expectation(DensityMatrix::maximally_mixed({2}), identity(3)), DimensionError);
}

TEST(PartialTrace, ProductStateFactors) {
  std::mt19937_64 rng(8);
  auto herm_psd = [&](std::size_t n) {
    const DenseMatrix x = random_matrix(n, rng);
    DenseMatrix r = x * x.adjoint();
    return DenseMatrix(r / r.trace());
  };
  const DensityMatrix a({2}, herm_psd(2)), b({3}, herm_psd(3));
  const auto ab = tensor(a, b);
  const std::vector<std::size_t> drop_b{1}, drop_a{0};
  EXPECT_LT((partial_trace(ab, drop_b).matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_LT((partial_trace(ab, drop_a).matrix() - b.matrix()).norm(), 1e-12);
  EXPECT_NEAR(partial_trace(ab, drop_a).trace().real(), 1.0, 1e-12);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
  const HilbertSpace s{2, 2};
  const auto bell = (StateVector::basis(s, {0, 0}) + StateVector::basis(s, {1, 1})).normalized();
  const std::vector<std::size_t> drop{1};
  const auto r = partial_trace(DensityMatrix::pure(bell), drop);
  EXPECT_LT((r.matrix() - 0.5 * DenseMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(DensityMatrix, RejectsInvalid) {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix({2}, m), NumericalError);
  m(0, 0) = 0.6;
  m(1, 1) = 0.6;
  EXPECT_THROW(DensityMatrix({2}, m), NumericalError);
}

TEST(Operator, SparseAndDenseAgree) {
  const HilbertSpace s{6, 6, 3, 3};
  const auto a = embed(annihilation(2), 2, s);
  EXPECT_TRUE(a.is_sparse());
  const auto n = dagger(a) * a;
  const auto psi = StateVector::basis(s, {0, 0, 2, 1});
  EXPECT_NEAR(inner(psi, apply(n, psi)).real(), 2.0, 1e-14);
  EXPECT_TRUE(n.is_hermitian());
}

TEST(Operator, AddingDifferentSpacesThrows) {
  auto a = identity(HilbertSpace{2, 3});
  EXPECT_THROW(a += identity(HilbertSpace{3, 2}), DimensionError);
}

}  // namespace
}  // namespace ioncavity::qcore
