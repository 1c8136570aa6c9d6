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

SolverResult solve_ista(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                        const SolverConfig& config) {
  if (config.variant != Variant::kIsta0 && config.variant != Variant::kIsta1) {
    throw InvalidArgument("solve_ista needs variant ccista_0 or ccista_1");
  }
  const detail::Stopwatch clock;
  ConcentrationMatrix omega = detail::prepare(s, lambda, config);

  SolverResult result;
  result.initial = omega;
  Matrix w = omega.left_multiply(s.values());
  double f = smooth_value(omega, w) + penalty_value(omega, lambda);
  result.initial_objective = f;
  Matrix g = smooth_gradient(omega, w);

  double tau_init = config.tau0;
  double delta_subg = subgradient_residual(omega, g, lambda);
  for (int k = 1; k <= config.max_iter; ++k) {
    LineSearchResult step;
    try {
      step = line_search(omega, w, g, tau_init, config.c, lambda, s,
                         config.max_backtracks);
    } catch (const StepUnderflowError& e) {
      throw StepUnderflowError(k, e.backtracks(), e.last_step(), f);
    }
    const double f_next = step.smooth + penalty_value(step.candidate, lambda);
    Matrix g_next = smooth_gradient(step.candidate, step.product);
    delta_subg = subgradient_residual(step.candidate, g_next, lambda);
    const double delta_func = detail::relative_change(f_next, f);

    if (config.variant == Variant::kIsta1) {
      tau_init = bb_initial_step(detail::dense_difference(step.candidate, omega),
                                 g_next - g, step.tau);
    }

    omega = std::move(step.candidate);
    w = std::move(step.product);
    g = std::move(g_next);
    f = f_next;
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
  result.delta_subg = delta_subg;
  result.seconds = clock.seconds();
  return result;
}

}  // namespace concord
