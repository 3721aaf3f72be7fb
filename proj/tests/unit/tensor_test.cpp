// Copyright 2026 The patchpeps Authors
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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <vector>

#include "patchpeps/errors.hpp"
#include "patchpeps/linalg.hpp"
#include "patchpeps/tensor.hpp"
#include "test_support.hpp"

namespace patchpeps {
namespace {

using testing::max_abs;
using testing::random_tensor;

Tensor ones(std::size_t rows, std::size_t cols) {
  return Tensor::matrix(rows, cols, std::vector<Complex>(rows * cols, 1.0));
}

Tensor diag(std::initializer_list<Complex> values) {
  std::vector<Complex> v(values);
  return Tensor::diagonal(v);
}

TEST(Contract, OrthonormalVectorsGiveOne) {
  const Tensor e0 = Tensor::vector({1.0, 0.0});
  const Tensor r = contract(e0, e0, {{0, 0}});
  ASSERT_EQ(r.rank(), 0u);
  EXPECT_EQ(r[0], Complex(1.0));
}

TEST(Contract, IdentityLeavesTensorUnchanged) {
  const Tensor b = random_tensor({2, 5}, 3);
  EXPECT_EQ(contract(Tensor::identity(2), b, {{1, 0}}), b);
}

TEST(Contract, RowSumsOfOnes) {
  const Tensor r = contract(ones(2, 3), ones(3, 2), {{1, 0}});
  ASSERT_EQ(r.shape(), (Shape{2, 2}));
  for (const auto& z : r.data()) EXPECT_EQ(z, Complex(3.0));
}

TEST(Contract, ResultAxesFollowDeclaredOrder) {
  const Tensor a = random_tensor({2, 3, 4}, 1);
  const Tensor b = random_tensor({5, 3}, 2);
  const Tensor r = contract(a, b, {{1, 1}});
  EXPECT_EQ(r.shape(), (Shape{2, 4, 5}));
  Complex manual = 0.0;
  for (std::size_t j = 0; j < 3; ++j) manual += a.at({1, j, 2}) * b.at({4, j});
  EXPECT_NEAR(std::abs(r.at({1, 2, 4}) - manual), 0.0, 1e-14);
}

TEST(Contract, ExtentMismatchIsDimensionError) {
  EXPECT_THROW(contract(ones(2, 3), ones(2, 2), {{1, 0}}), DimensionError);
}

TEST(Contract, InvalidAxisIsBoundsError) {
  EXPECT_THROW(contract(ones(2, 3), ones(3, 2), {{2, 0}}), BoundsError);
  EXPECT_THROW(contract(ones(2, 2), ones(2, 2), {{0, 0}, {0, 1}}), BoundsError);
}

TEST(Contract, OrderIndependenceOfThreeTensorChain) {
  const Tensor a = random_tensor({3, 4}, 11);
  const Tensor b = random_tensor({4, 5, 2}, 12);
  const Tensor c = random_tensor({5, 6}, 13);
  const Tensor left = contract(contract(a, b, {{1, 0}}), c, {{1, 0}});   // (3,2,6)
  const Tensor right = contract(a, contract(b, c, {{1, 0}}), {{1, 0}});  // (3,2,6)
  ASSERT_EQ(left.shape(), right.shape());
  EXPECT_LE(max_abs_diff(left, right), 1e-10 * max_abs(left));
}

TEST(Contract, IdentityAlongEveryAxis) {
  const Tensor t = random_tensor({2, 3, 4}, 21);
  for (std::size_t axis = 0; axis < t.rank(); ++axis) {
    const Tensor id = Tensor::identity(t.extent(axis));
    // Contracting id's column with `axis` moves that axis to the front.
    Tensor r = contract(id, t, {{1, axis}});
    std::vector<std::size_t> back(t.rank());
    for (std::size_t k = 0, src = 1; k < t.rank(); ++k) back[k] = k == axis ? 0 : src++;
    EXPECT_LE(max_abs_diff(r.permute(back), t), 1e-14) << "axis " << axis;
  }
}

TEST(TensorProduct, Scalars) {
  const Tensor r = tensor_product(Tensor::scalar(2.0), Tensor::scalar(3.0));
  EXPECT_EQ(r.rank(), 0u);
  EXPECT_EQ(r[0], Complex(6.0));
}

TEST(TensorProduct, BasisVectors) {
  const Tensor r = tensor_product(Tensor::vector({1.0, 0.0}), Tensor::vector({0.0, 1.0}));
  ASSERT_EQ(r.shape(), (Shape{2, 2}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(r.at({i, j}), Complex(i == 0 && j == 1 ? 1.0 : 0.0));
}

TEST(TensorProduct, PairStatesKeepUnitNorm) {
  const double h = 1.0 / std::sqrt(2.0);
  const Tensor phi = Tensor::matrix(2, 2, {h, 0.0, 0.0, h});
  const Tensor r = tensor_product(phi, phi);
  EXPECT_EQ(r.shape(), (Shape{2, 2, 2, 2}));
  EXPECT_NEAR(r.frobenius_norm(), 1.0, 1e-15);
}

TEST(Svd, Identity) {
  const SvdResult r = svd(Tensor::identity(3));
  EXPECT_EQ(r.s, (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(r.rank, 3u);
}

TEST(Svd, RankDeficientDiagonal) {
  const SvdResult r = svd(diag({2.0, 0.0}));
  ASSERT_EQ(r.s.size(), 2u);
  EXPECT_DOUBLE_EQ(r.s[0], 2.0);
  EXPECT_DOUBLE_EQ(r.s[1], 0.0);
  EXPECT_EQ(r.rank, 1u);
}

TEST(Svd, RandomTallMatrixReconstructs) {
  const Tensor m = random_tensor({4, 3}, 5);
  const SvdResult r = svd(m);
  EXPECT_EQ(r.rank, 3u);
  for (std::size_t k = 1; k < r.s.size(); ++k) EXPECT_GE(r.s[k - 1], r.s[k]);
  Tensor us = r.u;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 3; ++k) us.at({i, k}) *= r.s[k];
  EXPECT_LT(max_abs_diff(matmul(us, r.v_dag), m), 1e-10 * r.s[0]);
}

TEST(Svd, AxisSplitMatchesExplicitReshape) {
  const Tensor t = random_tensor({2, 3, 2}, 8);
  const std::vector<std::size_t> rows{1}, cols{0, 2};
  const SvdResult a = svd(t, rows, cols);
  const SvdResult b = svd(t.permute({1, 0, 2}).reshape({3, 4}));
  ASSERT_EQ(a.s.size(), b.s.size());
  for (std::size_t k = 0; k < a.s.size(); ++k) EXPECT_NEAR(a.s[k], b.s[k], 1e-12);
}

TEST(PseudoInverse, Identity) {
  EXPECT_LE(max_abs_diff(pseudo_inverse(Tensor::identity(3)), Tensor::identity(3)), 1e-15);
}

TEST(PseudoInverse, ZeroesDroppedSingularValues) {
  EXPECT_LE(max_abs_diff(pseudo_inverse(diag({2.0, 0.0})), diag({0.5, 0.0})), 1e-15);
}

TEST(PseudoInverse, LeftInverseOfInjectiveMap) {
  const Tensor a = random_tensor({4, 2}, 17);
  EXPECT_LE(max_abs_diff(matmul(pseudo_inverse(a), a), Tensor::identity(2)), 1e-10);
}

TEST(PseudoInverse, IsAnInvolutionOnFullColumnRank) {
  const Tensor a = random_tensor({5, 3}, 19);
  EXPECT_LE(max_abs_diff(pseudo_inverse(pseudo_inverse(a)), a), 1e-8 * max_abs(a));
}

TEST(PseudoInverse, CutoffIsRelative) {
  // 1e-3 survives the default cutoff but not rcond = 1e-2.
  EXPECT_LE(max_abs_diff(pseudo_inverse(diag({1.0, 1e-3})), diag({1.0, 1e3})), 1e-9);
  EXPECT_LE(max_abs_diff(pseudo_inverse(diag({1.0, 1e-3}), 1e-2), diag({1.0, 0.0})), 1e-15);
}

TEST(ConditionNumber, Examples) {
  EXPECT_DOUBLE_EQ(condition_number(Tensor::identity(3)), 1.0);
  EXPECT_NEAR(condition_number(diag({3.0, 1.0})), 3.0, 1e-14);
  // Columns of a unitary are orthonormal.
  const double h = 1.0 / std::sqrt(2.0);
  const Tensor iso = Tensor::matrix(3, 2, {h, h, h, -h, 0.0, 0.0});
  EXPECT_NEAR(condition_number(iso), 1.0, 1e-14);
}

TEST(ConditionNumber, RankDeficientThrowsWithSigmaMin) {
  try {
    condition_number(diag({1.0, 0.0}));
    FAIL() << "expected NotInjectiveError";
  } catch (const NotInjectiveError& e) {
    EXPECT_EQ(e.sigma_min(), 0.0);
  }
}

TEST(ConditionNumber, EqualsThatOfPseudoInverse) {
  for (std::uint64_t seed = 30; seed < 35; ++seed) {
    const Tensor a = random_tensor({6, 3}, seed);
    const double k = condition_number(a);
    EXPECT_NEAR(condition_number(pseudo_inverse(a)) / k, 1.0, 1e-8);
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_DOUBLE_EQ(operator_norm(diag({1.0, -1.0})), 1.0);
  EXPECT_NEAR(operator_norm(Tensor::identity(4).scaled(5.0)), 5.0, 1e-14);
}

TEST(OperatorNorm, HermitianMatchesLargestEigenvalueModulus) {
  const Tensor h = testing::random_hermitian(4, 41);
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_matrix(h));
  const double expected = es.eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(operator_norm(h), expected, 1e-10);
}

TEST(OperatorNorm, RejectsNonSquare) { EXPECT_THROW(operator_norm(ones(2, 3)), DimensionError); }

TEST(Tensor, ReshapeAndPermuteValidate) {
  const Tensor t = random_tensor({2, 3}, 2);
  EXPECT_THROW(t.reshape({4}), DimensionError);
  EXPECT_THROW(t.permute({0, 0}), BoundsError);
  EXPECT_EQ(t.permute({1, 0}).permute({1, 0}), t);
}

TEST(Tensor, RejectsMismatchedDataAndZeroExtent) {
  EXPECT_THROW(Tensor(Shape{2, 2}, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW(Tensor(Shape{2, 0}), DimensionError);
}

TEST(Tensor, AllFiniteDetectsNan) {
  Tensor t = Tensor::identity(2);
  EXPECT_TRUE(t.all_finite());
  t[1] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_FALSE(t.all_finite());
}

}  // namespace
}  // namespace patchpeps
