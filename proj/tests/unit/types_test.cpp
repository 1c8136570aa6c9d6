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

#include <gtest/gtest.h>

#include "concord/error.hpp"
#include "concord/types.hpp"
#include "testing.hpp"

namespace concord {
namespace {

TEST(DataMatrix, RejectsEmptyAndFalseCenteredClaim) {
  EXPECT_THROW(DataMatrix(Matrix(0, 3)), InvalidArgument);
  Matrix y(2, 1);
  y << 1.0, 2.0;
  EXPECT_THROW(DataMatrix(y, true), InvalidArgument);
  EXPECT_NO_THROW(DataMatrix(y, false));
}

TEST(DataMatrix, CenteredCopyHasZeroColumnSums) {
  testing::Gen gen(3);
  const DataMatrix y(testing::random_data(gen, 7, 4));
  const auto c = y.centered_copy();
  EXPECT_TRUE(c.centered());
  for (Index j = 0; j < 4; ++j) EXPECT_NEAR(c.values().col(j).sum(), 0.0, 1e-12);
}

TEST(CovarianceMatrix, Validation) {
  Matrix ragged(2, 3);
  ragged.setZero();
  EXPECT_THROW(CovarianceMatrix{ragged}, DimensionError);

  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.4, 1.0;
  EXPECT_THROW(CovarianceMatrix{asym}, InvalidArgument);

  Matrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(CovarianceMatrix{indefinite}, InvalidArgument);

  Matrix singular(2, 2);
  singular << 1.0, 1.0, 1.0, 1.0;
  EXPECT_NO_THROW(CovarianceMatrix{singular});
}

TEST(CovarianceMatrix, RankDeficientSampleCovarianceIsAccepted) {
  testing::Gen gen(5);
  Matrix y = testing::random_data(gen, 10, 40);
  y.rowwise() -= y.colwise().mean();
  Matrix s = y.transpose() * y / 10.0;
  s = 0.5 * (s + s.transpose()).eval();
  EXPECT_NO_THROW(CovarianceMatrix{s});
}

TEST(CovarianceMatrix, ZeroVarianceReported) {
  Matrix s = Matrix::Identity(3, 3);
  s(1, 1) = 0.0;
  const CovarianceMatrix cov(s);
  EXPECT_FALSE(cov.has_positive_diagonal());
  EXPECT_THROW(cov.require_positive_diagonal(), InvalidArgument);
}

TEST(ConcentrationMatrix, SortsAndDropsZeros) {
  Vector d = Vector::Ones(4);
  const ConcentrationMatrix m(d, {{2, 3, 0.5}, {0, 1, -0.25}, {1, 2, 0.0}});
  ASSERT_EQ(m.offdiag_pairs(), 2u);
  EXPECT_EQ(m.upper()[0].row, 0);
  EXPECT_EQ(m.upper()[1].row, 2);
  EXPECT_EQ(m.nnz(), 4u + 4u);
  EXPECT_DOUBLE_EQ(m(1, 0), -0.25);
  EXPECT_DOUBLE_EQ(m(3, 2), 0.5);
  EXPECT_DOUBLE_EQ(m(1, 2), 0.0);
}

TEST(ConcentrationMatrix, RejectsDuplicatesAndBadIndices) {
  Vector d = Vector::Ones(3);
  EXPECT_THROW(ConcentrationMatrix(d, {{0, 1, 0.5}, {0, 1, 0.2}}), InvalidArgument);
  EXPECT_THROW(ConcentrationMatrix(d, {{1, 1, 0.5}}), InvalidArgument);
  EXPECT_THROW(ConcentrationMatrix(d, {{0, 3, 0.5}}), InvalidArgument);
}

TEST(ConcentrationMatrix, DenseRoundTripAndProduct) {
  testing::Gen gen(11);
  const Matrix dense = testing::random_concentration(gen, 9, 0.3);
  const auto m = ConcentrationMatrix::from_dense(dense);
  EXPECT_EQ(m.to_dense(), dense);
  EXPECT_NEAR(m.frobenius_norm(), dense.norm(), 1e-12);
  const Matrix s = testing::random_covariance(gen, 9, 20);
  EXPECT_LE((m.left_multiply(s) - s * dense).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ConcentrationMatrix, NzPercentOverOffDiagonalSlots) {
  // 4995 pairs out of 999 * 1000 / 2 slots.
  const Index p = 1000;
  const ConcentrationMatrix m(Vector::Ones(p), {});
  EXPECT_DOUBLE_EQ(m.nz_percent(), 0.0);
  std::vector<OffDiagEntry> first_rows;
  Index count = 0;
  for (Index i = 0; i < p && count < 4995; ++i) {
    for (Index j = i + 1; j < p && count < 4995; ++j, ++count) {
      first_rows.push_back({i, j, 1.0});
    }
  }
  const ConcentrationMatrix dense_rows(Vector::Ones(p), first_rows);
  EXPECT_NEAR(dense_rows.nz_percent(), 1.0, 1e-12);
}

TEST(PenaltyMatrix, UniformAndWeighted) {
  const auto u = PenaltyMatrix::uniform(3, 0.2);
  EXPECT_TRUE(u.is_uniform());
  EXPECT_DOUBLE_EQ(u(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(u(0, 2), 0.2);
  EXPECT_THROW(PenaltyMatrix::uniform(3, -0.1), InvalidArgument);

  Matrix w(2, 2);
  w << 0.0, 0.3, 0.3, 0.0;
  const auto weighted = PenaltyMatrix::from_dense(w);
  EXPECT_FALSE(weighted.is_uniform());
  EXPECT_DOUBLE_EQ(weighted(1, 0), 0.3);
  w(0, 1) = 0.4;
  EXPECT_THROW(PenaltyMatrix::from_dense(w), InvalidArgument);
}

}  // namespace
}  // namespace concord
