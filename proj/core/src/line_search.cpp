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

#include "concord/error.hpp"
#include "concord/model.hpp"
#include "concord/prox.hpp"
#include "solver_common.hpp"

namespace concord {

LineSearchResult line_search(const ConcentrationMatrix& theta, const Matrix& w,
                             const Matrix& gradient, double tau_init, double c,
                             const PenaltyMatrix& lambda,
                             const CovarianceMatrix& s, int max_backtracks) {
  detail::require_same_dim(theta.dim(), s.dim(), "theta vs S");
  detail::require_same_dim(theta.dim(), gradient.rows(), "theta vs G");
  if (!theta.has_positive_diagonal()) {
    throw InvalidArgument("line search needs a point with positive diagonal");
  }
  if (!(tau_init > 0.0) || !std::isfinite(tau_init)) {
    throw InvalidArgument("line search needs a positive initial step");
  }
  if (!(c > 0.0 && c < 1.0)) {
    throw InvalidArgument("backtracking factor must lie in (0, 1)");
  }

  double tau = tau_init;
  for (int j = 0; j <= max_backtracks; ++j) {
    ConcentrationMatrix cand = prox_step(theta, gradient, tau, lambda);
    if (cand.has_positive_diagonal()) {
      Matrix w_cand = cand.left_multiply(s.values());
      double sq = 0.0;
      const double gap =
          detail::smooth_linearization_gap(theta, w, cand, w_cand, &sq);
      if (gap <= sq / (2.0 * tau)) {
        const double h1 = smooth_value(cand, w_cand);
        return {tau, j, std::move(cand), std::move(w_cand), h1};
      }
    }
    tau *= c;
  }
  throw StepUnderflowError(0, max_backtracks, tau / c, smooth_value(theta, w));
}

LineSearchResult line_search(const ConcentrationMatrix& theta,
                             const Matrix& gradient, double tau_init, double c,
                             const PenaltyMatrix& lambda,
                             const CovarianceMatrix& s, int max_backtracks) {
  detail::require_same_dim(theta.dim(), s.dim(), "theta vs S");
  return line_search(theta, theta.left_multiply(s.values()), gradient,
                     tau_init, c, lambda, s, max_backtracks);
}

double bb_initial_step(const Matrix& d_omega, const Matrix& d_gradient,
                       double previous_tau) {
  constexpr double kCap = 1e6;
  detail::require_same_dim(d_omega.rows(), d_gradient.rows(), "dOmega vs dG");
  detail::require_same_dim(d_omega.cols(), d_gradient.cols(), "dOmega vs dG");
  const double num = d_omega.squaredNorm();
  const double den = (d_omega.array() * d_gradient.array()).sum();
  const double tau = num / den;
  if (!(den > 0.0) || !std::isfinite(tau) || !(tau > 0.0)) return previous_tau;
  return std::min(tau, kCap);
}

double fista_momentum(double alpha) {
  return (1.0 + std::sqrt(1.0 + 4.0 * alpha * alpha)) / 2.0;
}

}  // namespace concord
