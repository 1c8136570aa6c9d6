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

#include "concord/error.hpp"
#include "concord/model.hpp"
#include "solver_common.hpp"

namespace concord {

namespace {

// Extrapolated points whose diagonal falls to this floor restart momentum.
constexpr double kDiagFloor = 1e-12;

}  // namespace

SolverResult solve_fista(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                         const SolverConfig& config) {
  if (config.variant != Variant::kFista0 && config.variant != Variant::kFista1) {
    throw InvalidArgument("solve_fista needs variant ccfista_0 or ccfista_1");
  }
  const detail::Stopwatch clock;
  ConcentrationMatrix omega = detail::prepare(s, lambda, config);

  SolverResult result;
  result.initial = omega;
  Matrix w = omega.left_multiply(s.values());
  double f = smooth_value(omega, w) + penalty_value(omega, lambda);
  result.initial_objective = f;
  result.delta_subg =
      subgradient_residual(omega, smooth_gradient(omega, w), lambda);

  ConcentrationMatrix theta = omega;
  Matrix w_theta = w;
  double alpha = 1.0;
  double tau_init = config.tau0;

  for (int k = 1; k <= config.max_iter; ++k) {
    const Matrix g_theta = smooth_gradient(theta, w_theta);
    LineSearchResult step;
    try {
      step = line_search(theta, w_theta, g_theta, tau_init, config.c, lambda, s,
                         config.max_backtracks);
    } catch (const StepUnderflowError& e) {
      throw StepUnderflowError(k, e.backtracks(), e.last_step(), f);
    }

    const double f_next = step.smooth + penalty_value(step.candidate, lambda);
    const double delta_subg = subgradient_residual(
        step.candidate, smooth_gradient(step.candidate, step.product), lambda);
    const double delta_func = detail::relative_change(f_next, f);

    double alpha_next = fista_momentum(alpha);
    const double beta = (alpha - 1.0) / alpha_next;
    ConcentrationMatrix theta_next =
        detail::extrapolate(step.candidate, omega, beta);
    if (theta_next.min_diag() <= kDiagFloor) {
      alpha_next = 1.0;
      theta = step.candidate;
      w_theta = step.product;
    } else {
      w_theta = step.product + beta * (step.product - w);
      theta = std::move(theta_next);
    }
    alpha = alpha_next;
    if (config.variant == Variant::kFista1) tau_init = step.tau;

    omega = std::move(step.candidate);
    w = std::move(step.product);
    f = f_next;
    result.delta_subg = delta_subg;
    result.trace.push_back(detail::make_record(k, f, delta_subg, delta_func,
                                               step.tau, step.backtracks,
                                               omega, clock));
    result.iterations = k;
    if (detail::is_converged(delta_subg, delta_func, config)) {
      result.converged = true;
      break;
    }
  }

  result.estimate = std::move(omega);
  result.objective = f;
  result.seconds = clock.seconds();
  return result;
}

}  // namespace concord
