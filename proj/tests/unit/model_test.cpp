// Copyright 2026 The Concord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "concord/error.hpp"
#include "concord/model.hpp"
#include "testing.hpp"

namespace concord {
namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(Objective, IdentityHasNoPenaltyMass) {
  const auto eye = ConcentrationMatrix::identity(3);
  EXPECT_DOUBLE_EQ(
      objective(eye, CovarianceMatrix::identity(3), PenaltyMatrix::uniform(3, 0.2)),
      1.5);
}

TEST(Objective, TwoByTwoHandValue) {
  const ConcentrationMatrix omega(Vector::Ones(2), {{0, 1, 0.5}});
  const auto s = CovarianceMatrix::identity(2);
  const auto lambda = PenaltyMatrix::uniform(2, 0.1);
  EXPECT_DOUBLE_EQ(smooth_value(omega, s), 1.25);
  EXPECT_DOUBLE_EQ(penalty_value(omega, lambda), 0.1);
  EXPECT_DOUBLE_EQ(objective(omega, s, lambda), 1.35);
}

TEST(Objective, NonpositiveDiagonalIsInfinite) {
  Vector d(2);
  d << 0.0, 1.0;
  const ConcentrationMatrix omega(d, {});
  EXPECT_EQ(smooth_value(omega, CovarianceMatrix::identity(2)),
            std::numeric_limits<double>::infinity());
  d << -1.0, 1.0;
  EXPECT_EQ(objective(ConcentrationMatrix(d, {}), CovarianceMatrix::identity(2),
                      PenaltyMatrix::uniform(2, 0.1)),
            std::numeric_limits<double>::infinity());
}

TEST(Objective, SparseMatchesDenseTripleProduct) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Index p = gen.integer(2, 12);
    const Matrix dense = testing::random_concentration(gen, p, 0.4);
    const Matrix s = testing::random_covariance(gen, p, 3 * p);
    const double lambda = gen.uniform(0.0, 0.5);
    const double expect = testing::dense_objective(dense, s, lambda);
    const double got = objective(ConcentrationMatrix::from_dense(dense),
                                 CovarianceMatrix(s), PenaltyMatrix::uniform(p, lambda));
    EXPECT_NEAR(got, expect, 1e-12 * std::abs(expect));
  }
}

TEST(Objective, IndependentOfInputOrdering) {
  testing::Gen gen(22);
  const Matrix dense = testing::random_concentration(gen, 8, 0.5);
  const auto sorted = ConcentrationMatrix::from_dense(dense);
  std::vector<OffDiagEntry> shuffled(sorted.upper().begin(), sorted.upper().end());
  std::reverse(shuffled.begin(), shuffled.end());
  const ConcentrationMatrix reordered(sorted.diag(), shuffled);
  const CovarianceMatrix s(testing::random_covariance(gen, 8, 16));
  const auto lambda = PenaltyMatrix::uniform(8, 0.3);
  EXPECT_EQ(objective(sorted, s, lambda), objective(reordered, s, lambda));
}

TEST(Gradient, HandValues) {
  const auto s = CovarianceMatrix::identity(2);
  EXPECT_EQ(smooth_gradient(ConcentrationMatrix::identity(2), s), Matrix::Zero(2, 2));
  const Matrix g = smooth_gradient(ConcentrationMatrix::diagonal(Vector::Constant(2, 2.0)), s);
  EXPECT_EQ(g, mat2(1.5, 0.0, 0.0, 1.5));
}

TEST(Gradient, RejectsNonpositiveDiagonal) {
  Vector d(2);
  d << 1.0, 0.0;
  EXPECT_THROW(smooth_gradient(ConcentrationMatrix(d, {}), CovarianceMatrix::identity(2)),
               InvalidArgument);
}

TEST(Gradient, MatchesCentralDifferences) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix dense = testing::random_concentration(gen, 8, 0.4);
    const Matrix s = testing::random_covariance(gen, 8, 24);
    const Matrix g = smooth_gradient(ConcentrationMatrix::from_dense(dense), CovarianceMatrix(s));
    const Matrix fd = testing::finite_difference_gradient(dense, s, 1e-5);
    EXPECT_LE((g - fd).norm() / g.norm(), 1e-6) << "trial " << trial;
  }
}

TEST(Hessian, HandValues) {
  const auto eye = ConcentrationMatrix::identity(3);
  const Matrix w = Matrix::Identity(3, 3);
  EXPECT_DOUBLE_EQ(hessian_quadratic_form(eye, CovarianceMatrix(Matrix::Zero(3, 3)), w), 3.0);
  EXPECT_DOUBLE_EQ(hessian_quadratic_form(eye, CovarianceMatrix::identity(3), w), 6.0);
}

TEST(Hessian, MatchesExplicitKroneckerForm) {
  testing::Gen gen(24);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix dense = testing::random_concentration(gen, 5, 0.5);
    const Matrix s = testing::random_covariance(gen, 5, 10);
    const Matrix w = testing::random_symmetric(gen, 5, 1.0);
    const double got =
        hessian_quadratic_form(ConcentrationMatrix::from_dense(dense), CovarianceMatrix(s), w);
    const double expect = testing::kronecker_quadratic_form(dense, s, w);
    EXPECT_NEAR(got, expect, 1e-10 * std::max(1.0, std::abs(expect)));
    double diag_part = 0.0;
    for (Index i = 0; i < 5; ++i) diag_part += w(i, i) * w(i, i) / (dense(i, i) * dense(i, i));
    EXPECT_GE(got, diag_part - 1e-12);
  }
}

TEST(Hessian, DimensionMismatch) {
  EXPECT_THROW(hessian_quadratic_form(ConcentrationMatrix::identity(3),
                                      CovarianceMatrix::identity(3), Matrix::Zero(2, 2)),
               DimensionError);
}

TEST(SubgradientResidual, HandValues) {
  const auto eye = ConcentrationMatrix::identity(2);
  EXPECT_EQ(subgradient_residual(eye, CovarianceMatrix::identity(2),
                                 PenaltyMatrix::uniform(2, 0.7)),
            0.0);
  const CovarianceMatrix s(mat2(1.0, 0.5, 0.5, 1.0));
  EXPECT_EQ(subgradient_residual(eye, s, PenaltyMatrix::uniform(2, 0.6)), 0.0);
  EXPECT_NEAR(subgradient_residual(eye, s, PenaltyMatrix::uniform(2, 0.3)), 0.2, 1e-15);
}

TEST(SubgradientResidual, ZeroAtBruteForceMinimizer) {
  testing::Gen gen(25);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix s = testing::random_covariance(gen, 3, 8);
    const double lambda = 0.05;
    const Matrix opt = testing::brute_force_minimizer(s, lambda);
    const double r = subgradient_residual(ConcentrationMatrix::from_dense(opt),
                                          CovarianceMatrix(s),
                                          PenaltyMatrix::uniform(3, lambda));
    EXPECT_LE(r, 1e-6) << "trial " << trial;
  }
}

TEST(SampleCovariance, CenteredDivisorN) {
  Matrix y(3, 2);
  y << 1.0, 2.0, 2.0, 4.0, 3.0, 9.0;
  const Matrix s = sample_covariance(DataMatrix(y), true).values();
  Matrix c = y.rowwise() - y.colwise().mean();
  EXPECT_LE((s - c.transpose() * c / 3.0).cwiseAbs().maxCoeff(), 1e-14);
  const Matrix raw = sample_covariance(DataMatrix(y), false).values();
  EXPECT_LE((raw - y.transpose() * y / 3.0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SampleCovariance, ReportsZeroVarianceColumns) {
  Matrix y(3, 3);
  y << 1.0, 5.0, 2.0, 2.0, 5.0, 1.0, 3.0, 5.0, 0.0;
  std::vector<Index> zero;
  sample_covariance(DataMatrix(y), true, &zero);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], 1);
}

}  // namespace
}  // namespace concord
