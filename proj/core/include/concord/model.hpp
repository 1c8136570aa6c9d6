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

#include <string>
#include <vector>

#include "concord/types.hpp"

// The pseudo-likelihood objective in per-sample form
//
//   F(Omega) = h1(Omega) + h2(Omega)
//   h1(Omega) = -sum_i log(omega_ii) + 1/2 tr(Omega S Omega)
//   h2(Omega) = sum_{i != j} Lambda_ij |omega_ij|
//
// with S = Y^T Y / n. h2 runs over the full matrix, so every unordered pair
// is charged twice. Gradients are taken entrywise over all p^2 entries.
namespace concord {

// S = Y^T Y / n after optional column centering. Indices (0-based) of
// zero-variance columns are appended to `zero_variance` when it is given.
CovarianceMatrix sample_covariance(const DataMatrix& y, bool center = true,
                                   std::vector<Index>* zero_variance = nullptr);

// h1. +infinity when some omega_ii <= 0.
double smooth_value(const ConcentrationMatrix& omega, const CovarianceMatrix& s);
// Same, reusing w = S * Omega.
double smooth_value(const ConcentrationMatrix& omega, const Matrix& w);

double penalty_value(const ConcentrationMatrix& omega,
                     const PenaltyMatrix& lambda);

// F = h1 + h2.
double objective(const ConcentrationMatrix& omega, const CovarianceMatrix& s,
                 const PenaltyMatrix& lambda);

// G = -Omega_D^{-1} + (S Omega + Omega S) / 2. Throws on nonpositive diagonal.
Matrix smooth_gradient(const ConcentrationMatrix& omega,
                       const CovarianceMatrix& s);
Matrix smooth_gradient(const ConcentrationMatrix& omega, const Matrix& w);

// vec(W)^T Hess(h1) vec(W) = sum_i w_ii^2 / omega_ii^2 + tr(W S W).
double hessian_quadratic_form(const ConcentrationMatrix& omega,
                              const CovarianceMatrix& s, const Matrix& w);

// ||R||_F / ||Omega||_F where R is the minimal-norm element of
// grad h1 + subdifferential h2.
double subgradient_residual(const ConcentrationMatrix& omega,
                            const CovarianceMatrix& s,
                            const PenaltyMatrix& lambda);
double subgradient_residual(const ConcentrationMatrix& omega,
                            const Matrix& gradient,
                            const PenaltyMatrix& lambda);

// Entrywise minimal-norm subgradient R (exposed for certificates and tests).
Matrix minimal_subgradient(const ConcentrationMatrix& omega,
                           const Matrix& gradient, const PenaltyMatrix& lambda);

namespace detail {
void require_same_dim(Index a, Index b, const char* what);
}  // namespace detail

}  // namespace concord
