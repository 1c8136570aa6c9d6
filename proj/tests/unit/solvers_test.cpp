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

#include <gtest/gtest.h>

#include "concord/certificates.hpp"
#include "concord/error.hpp"
#include "concord/model.hpp"
#include "concord/solvers.hpp"
#include "testing.hpp"

namespace concord {
namespace {

const Variant kAll[] = {Variant::kConcord, Variant::kIsta0, Variant::kIsta1,
                        Variant::kFista0, Variant::kFista1, Variant::kPnopt};

SolverConfig config_for(Variant v, double eps_subg = 1e-5) {
  SolverConfig c;
  c.variant = v;
  c.eps_subg = eps_subg;
  return c;
}

TEST(Variants, NamesRoundTrip) {
  for (auto v : all_variants()) EXPECT_EQ(parse_variant(variant_name(v)), v);
  EXPECT_EQ(variant_name(Variant::kIsta1), "ccista_1");
  try {
    parse_variant("bogus");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("ccfista_1"), std::string::npos);
  }
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tau0 = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SolverConfig{};
  c.c = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SolverConfig{};
  c.eps_func = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = SolverConfig{};
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Solvers, RejectZeroVariance) {
  Matrix s = Matrix::Identity(3, 3);
  s(2, 2) = 0.0;
  for (auto v : kAll) {
    EXPECT_THROW(solve(CovarianceMatrix(s), PenaltyMatrix::uniform(3, 0.1), config_for(v)),
                 InvalidArgument);
  }
}

TEST(Solvers, IdentityIsFixedPoint) {
  for (auto v : kAll) {
    const auto r = solve(CovarianceMatrix::identity(5), PenaltyMatrix::uniform(5, 0.2), config_for(v));
    EXPECT_TRUE(r.converged) << variant_name(v);
    EXPECT_LE(r.iterations, 2) << variant_name(v);
    EXPECT_EQ(r.delta_subg, 0.0) << variant_name(v);
    EXPECT_EQ(r.estimate, ConcentrationMatrix::identity(5)) << variant_name(v);
  }
}

TEST(Solvers, DiagonalSolutionAboveLambdaMax) {
  Matrix s(2, 2);
  s << 1.0, 0.5, 0.5, 1.0;
  for (auto v : kAll) {
    const auto r = solve(CovarianceMatrix(s), PenaltyMatrix::uniform(2, 0.6), config_for(v));
    EXPECT_LE((r.estimate.to_dense() - Matrix::Identity(2, 2)).norm(), 1e-8) << variant_name(v);
  }
}

TEST(Solvers, AgreeOnRandomInstance) {
  testing::Gen gen(71);
  const DataMatrix y(testing::random_data(gen, 40, 20));
  const auto s = sample_covariance(y);
  const auto pen = PenaltyMatrix::uniform(20, 0.3 * lambda_max(s));
  auto reference = solve(s, pen, config_for(Variant::kConcord, 1e-10));
  ASSERT_TRUE(reference.converged);
  ASSERT_GT(reference.estimate.offdiag_pairs(), 0u);
  for (auto v : kAll) {
    const auto r = solve(s, pen, config_for(v, 1e-10));
    EXPECT_TRUE(r.converged) << variant_name(v);
    EXPECT_NEAR(r.objective, reference.objective, 1e-8 * std::abs(reference.objective))
        << variant_name(v);
    EXPECT_LE((r.estimate.to_dense() - reference.estimate.to_dense()).norm(), 1e-4)
        << variant_name(v);
  }
}

TEST(Solvers, PnoptNeedsNoMoreIterationsThanIsta) {
  testing::Gen gen(72);
  const CovarianceMatrix s(testing::random_covariance(gen, 15, 30));
  const auto pen = PenaltyMatrix::uniform(15, 0.3 * lambda_max(s));
  const auto ista = solve(s, pen, config_for(Variant::kIsta0, 1e-8));
  const auto pnopt = solve(s, pen, config_for(Variant::kPnopt, 1e-8));
  EXPECT_LE((ista.estimate.to_dense() - pnopt.estimate.to_dense()).norm(), 1e-4);
  EXPECT_LE(pnopt.iterations, ista.iterations);
}

TEST(Solvers, ConvergedResidualWithinTolerance) {
  testing::Gen gen(73);
  for (int trial = 0; trial < 4; ++trial) {
    const CovarianceMatrix s(testing::random_covariance(gen, 12, 30));
    const auto pen = PenaltyMatrix::uniform(12, gen.uniform(0.1, 0.6) * lambda_max(s));
    for (auto v : kAll) {
      const auto r = solve(s, pen, config_for(v));
      ASSERT_TRUE(r.converged);
      EXPECT_LE(subgradient_residual(r.estimate, s, pen), 1e-5 + 1e-12) << variant_name(v);
      EXPECT_EQ(r.iterations, static_cast<int>(r.trace.size()));
      EXPECT_EQ(r.trace.back().delta_subg, r.delta_subg);
      for (const auto& rec : r.trace) EXPECT_GT(rec.diag_min, 0.0);
    }
  }
}

TEST(Solvers, IstaObjectiveNeverIncreases) {
  testing::Gen gen(74);
  for (auto v : {Variant::kIsta0, Variant::kIsta1, Variant::kPnopt}) {
    const CovarianceMatrix s(testing::random_covariance(gen, 20, 25));
    const auto r = solve(s, PenaltyMatrix::uniform(20, 0.2 * lambda_max(s)), config_for(v, 1e-9));
    double prev = r.initial_objective;
    for (const auto& rec : r.trace) {
      EXPECT_LE(rec.objective, prev + 1e-12 * std::abs(prev)) << variant_name(v);
      prev = rec.objective;
    }
  }
}

TEST(Solvers, MaxIterWithoutConvergence) {
  testing::Gen gen(75);
  const CovarianceMatrix s(testing::random_covariance(gen, 10, 20));
  auto c = config_for(Variant::kIsta0, 1e-12);
  c.max_iter = 3;
  const auto r = solve(s, PenaltyMatrix::uniform(10, 0.05), c);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.trace.size(), 3u);
}

TEST(Solvers, DeterministicTraces) {
  testing::Gen gen(76);
  const CovarianceMatrix s(testing::random_covariance(gen, 15, 30));
  const auto pen = PenaltyMatrix::uniform(15, 0.1);
  for (auto v : kAll) {
    const auto a = solve(s, pen, config_for(v));
    const auto b = solve(s, pen, config_for(v));
    EXPECT_EQ(a.estimate, b.estimate) << variant_name(v);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      EXPECT_EQ(a.trace[k].objective, b.trace[k].objective);
      EXPECT_EQ(a.trace[k].step_size, b.trace[k].step_size);
      EXPECT_EQ(a.trace[k].nnz, b.trace[k].nnz);
    }
  }
}

TEST(Solvers, CustomInitialPoint) {
  testing::Gen gen(77);
  const CovarianceMatrix s(testing::random_covariance(gen, 8, 20));
  const auto pen = PenaltyMatrix::uniform(8, 0.1);
  auto c = config_for(Variant::kFista0, 1e-9);
  c.initial = ConcentrationMatrix::identity(8);
  const auto from_eye = solve(s, pen, c);
  EXPECT_EQ(from_eye.initial, ConcentrationMatrix::identity(8));
  const auto from_default = solve(s, pen, config_for(Variant::kFista0, 1e-9));
  EXPECT_LE((from_eye.estimate.to_dense() - from_default.estimate.to_dense()).norm(), 1e-5);
  c.initial = ConcentrationMatrix::diagonal(Vector::Constant(8, -1.0));
  EXPECT_THROW(solve(s, pen, c), InvalidArgument);
}

TEST(Solvers, DefaultInitialIsDiagonalMinimizer) {
  Matrix s = Matrix::Identity(2, 2);
  s(0, 0) = 4.0;
  const auto start = default_initial(CovarianceMatrix(s));
  EXPECT_DOUBLE_EQ(start.diag()(0), 0.5);
  EXPECT_DOUBLE_EQ(start.diag()(1), 1.0);
}

TEST(Solvers, FromDataMatchesFromCovariance) {
  testing::Gen gen(78);
  const DataMatrix y(testing::random_data(gen, 30, 10));
  const auto s = sample_covariance(y, true);
  const auto pen = PenaltyMatrix::uniform(10, 0.08);
  for (auto v : kAll) {
    const auto a = solve(y, pen, config_for(v, 1e-9), true);
    const auto b = solve(s, pen, config_for(v, 1e-9));
    EXPECT_LE((a.estimate.to_dense() - b.estimate.to_dense()).norm(), 1e-7) << variant_name(v);
  }
}

TEST(Solvers, WeightedPenaltyIsRespected) {
  testing::Gen gen(79);
  const CovarianceMatrix s(testing::random_covariance(gen, 6, 20));
  Matrix w = Matrix::Constant(6, 6, 0.02);
  w.diagonal().setZero();
  // Forbid the (0, 1) edge outright.
  w(0, 1) = w(1, 0) = 1e3;
  const auto pen = PenaltyMatrix::from_dense(w);
  for (auto v : kAll) {
    auto config = config_for(v, 1e-9);
    // Unrestarted momentum with a shrink-only step is slow at this tolerance.
    config.max_iter = 50000;
    const auto r = solve(s, pen, config);
    EXPECT_EQ(r.estimate(0, 1), 0.0) << variant_name(v);
    EXPECT_LE(subgradient_residual(r.estimate, s, pen), 1e-9) << variant_name(v);
    EXPECT_TRUE(r.converged) << variant_name(v);
  }
}

}  // namespace
}  // namespace concord
