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

#pragma once

#include "concord/types.hpp"

namespace concord {

// Diagonal envelope for every Omega in the level set {F(Omega) <= level}:
//   lower <= omega_kk <= upper, and the gradient Lipschitz constant
//   lipschitz = lower^-2 + ||S||_2 that holds on that set.
struct LevelSetBounds {
  double level = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  // log(lower); stays finite when lower underflows to 0.
  double log_lower = 0.0;
  double spectral_norm = 0.0;
  double lipschitz = 0.0;
};

// `level` is normally F(Omega0) for the starting point of a run. The penalty
// enters through its smallest off-diagonal weight.
LevelSetBounds level_set_bounds(const CovarianceMatrix& s,
                                const PenaltyMatrix& lambda, double level);

// Largest eigenvalue of a symmetric PSD matrix by power iteration from a
// fixed start vector (1000 iterations max, 1e-10 relative change).
double spectral_norm(const Matrix& s);

struct KktReport {
  double diag_violation = 0.0;     // max |G_ii|
  double nonzero_violation = 0.0;  // max |G_ij + Lambda_ij sign(omega_ij)|
  double zero_excess = 0.0;        // max (|G_ij| - Lambda_ij)_+ at omega_ij = 0
  double tolerance = 0.0;
  bool pass = false;
};

KktReport kkt_check(const ConcentrationMatrix& omega, const CovarianceMatrix& s,
                    const PenaltyMatrix& lambda, double tolerance);

// Dual feasibility excess computed from the data without forming the
// np x p(p-1)/2 coefficient matrix. Returns
//   max over zero pairs i<j of ( |Y_j^T z_i + Y_i^T z_j| / n - 2 Lambda_ij )_+
// with z_i = Y omega_i. Equals 2 * kkt_check(...).zero_excess when S is the
// sample covariance of the same (identically centered) Y.
double dual_feasibility_from_data(const DataMatrix& y,
                                  const ConcentrationMatrix& omega,
                                  const PenaltyMatrix& lambda,
                                  bool center = true);

// Smallest uniform lambda for which the minimizer is diagonal:
//   max_{i<j} |s_ij| (1/sqrt(s_ii) + 1/sqrt(s_jj)) / 2.
double lambda_max(const CovarianceMatrix& s);

}  // namespace concord
