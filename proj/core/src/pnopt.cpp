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
#include <utility>
#include <vector>

#include "concord/error.hpp"
#include "concord/model.hpp"
#include "concord/prox.hpp"
#include "solver_common.hpp"

namespace concord {

namespace {

// Coordinate descent on the quadratic model plus l1 term. Each pair update
// is the exact 1-D minimizer; S*W is kept current so one update costs O(p).
class NewtonSubproblem {
 public:
  NewtonSubproblem(const Matrix& omega, const Matrix& gradient, const Matrix& s,
                   const PenaltyMatrix& lambda)
      : om_(omega),
        g_(gradient),
        s_(s),
        lambda_(lambda),
        p_(omega.rows()),
        w_(Matrix::Zero(p_, p_)),
        sw_(Matrix::Zero(p_, p_)),
        inv_sq_(omega.diagonal().array().square().inverse().matrix()),
        rounding_floor_(64.0 * std::numeric_limits<double>::epsilon() *
                        omega.cwiseAbs().maxCoeff()) {}

  double update_pair(Index i, Index j) {
    const double a = s_(i, i) + s_(j, j);
    const double g = 2.0 * g_(i, j) + sw_(i, j) + sw_(j, i);
    const double u = om_(i, j) + w_(i, j);
    const double u_next = soft_threshold(u - g / a, 2.0 * lambda_(i, j) / a);
    const double w_next = u_next - om_(i, j);
    const double delta = w_next - w_(i, j);
    if (delta != 0.0) {
      w_(i, j) = w_next;
      w_(j, i) = w_next;
      sw_.col(j).noalias() += delta * s_.col(i);
      sw_.col(i).noalias() += delta * s_.col(j);
    }
    return std::abs(delta);
  }

  double update_diag(Index i) {
    const double a = inv_sq_(i) + s_(i, i);
    const double g = g_(i, i) + inv_sq_(i) * w_(i, i) + sw_(i, i);
    const double delta = -g / a;
    if (delta != 0.0) {
      w_(i, i) += delta;
      sw_.col(i).noalias() += delta * s_.col(i);
    }
    return std::abs(delta);
  }

  // Pairs that can move: nonzero in Omega + W, or whose model gradient
  // exceeds the penalty.
  std::vector<std::pair<Index, Index>> active_pairs() const {
    std::vector<std::pair<Index, Index>> active;
    for (Index i = 0; i < p_; ++i) {
      for (Index j = i + 1; j < p_; ++j) {
        const double grad = g_(i, j) + 0.5 * (sw_(i, j) + sw_(j, i));
        if (om_(i, j) + w_(i, j) != 0.0 || std::abs(grad) > lambda_(i, j)) {
          active.emplace_back(i, j);
        }
      }
    }
    return active;
  }

  double sweep(const std::vector<std::pair<Index, Index>>& pairs) {
    double biggest = 0.0;
    for (const auto& [i, j] : pairs) biggest = std::max(biggest, update_pair(i, j));
    for (Index i = 0; i < p_; ++i) biggest = std::max(biggest, update_diag(i));
    return biggest;
  }

  // Pair updates pass through omega + w, so changes below a few ulps of
  // |omega| are rounding noise and count as quiet.
  bool quiet(double biggest_change, double tolerance) const {
    return biggest_change <=
           std::max(tolerance * w_.cwiseAbs().maxCoeff(), rounding_floor_);
  }

  std::vector<std::pair<Index, Index>> all_pairs() const {
    std::vector<std::pair<Index, Index>> pairs;
    pairs.reserve(static_cast<std::size_t>(p_ * (p_ - 1) / 2));
    for (Index i = 0; i < p_; ++i) {
      for (Index j = i + 1; j < p_; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }

  Matrix& direction() { return w_; }
  Matrix& s_direction() { return sw_; }

 private:
  const Matrix& om_;
  const Matrix& g_;
  const Matrix& s_;
  const PenaltyMatrix& lambda_;
  Index p_;
  Matrix w_;
  Matrix sw_;
  Vector inv_sq_;
  double rounding_floor_;
};

// F(Omega + tau D) - F(Omega) without forming either objective value.
double objective_difference(const Matrix& om, const Matrix& w_omega,
                            const Matrix& d, const Matrix& sd, double tau,
                            const PenaltyMatrix& lambda) {
  const Index p = om.rows();
  double barrier = 0.0;
  double pen = 0.0;
  for (Index j = 0; j < p; ++j) {
    const double x = tau * d(j, j) / om(j, j);
    if (!(x > -1.0)) return std::numeric_limits<double>::infinity();
    barrier -= std::log1p(x);
    for (Index i = 0; i < p; ++i) {
      if (i == j) continue;
      pen += lambda(i, j) * (std::abs(om(i, j) + tau * d(i, j)) -
                             std::abs(om(i, j)));
    }
  }
  const double linear = (d.array() * w_omega.array()).sum();
  const double curvature = (d.array() * sd.array()).sum();
  return barrier + tau * linear + 0.5 * tau * tau * curvature + pen;
}

double full_penalty(const Matrix& m, const PenaltyMatrix& lambda) {
  double sum = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j) sum += lambda(i, j) * std::abs(m(i, j));
    }
  }
  return sum;
}

}  // namespace

NewtonDirection pnopt_direction(const ConcentrationMatrix& omega,
                                const Matrix& gradient,
                                const CovarianceMatrix& s,
                                const PenaltyMatrix& lambda, double tolerance) {
  const Index p = omega.dim();
  detail::require_same_dim(p, s.dim(), "Omega vs S");
  detail::require_same_dim(p, gradient.rows(), "Omega vs G");
  detail::require_same_dim(p, lambda.dim(), "Omega vs Lambda");
  if (!omega.has_positive_diagonal()) {
    throw InvalidArgument("Newton direction needs a positive diagonal");
  }
  const Matrix om = omega.to_dense();
  NewtonSubproblem sub(om, gradient, s.values(), lambda);

  const long long cap = 10LL * p * p;
  const auto everything = sub.all_pairs();
  int sweeps = 0;
  auto count = [&] {
    if (++sweeps > cap) {
      throw Error("Newton subproblem exceeded " + std::to_string(cap) +
                  " coordinate sweeps");
    }
  };
  while (true) {
    const auto active = sub.active_pairs();
    while (true) {
      count();
      if (sub.quiet(sub.sweep(active), tolerance)) break;
    }
    count();
    if (sub.quiet(sub.sweep(everything), tolerance)) break;
  }
  return {std::move(sub.direction()), std::move(sub.s_direction()), sweeps};
}

SolverResult solve_pnopt(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                         const SolverConfig& config) {
  if (config.variant != Variant::kPnopt) {
    throw InvalidArgument("solve_pnopt needs variant pnopt");
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

  for (int k = 1; k <= config.max_iter; ++k) {
    const Matrix g = smooth_gradient(omega, w);
    NewtonDirection dir = pnopt_direction(omega, g, s, lambda);
    const Matrix om = omega.to_dense();
    const double predicted = (g.array() * dir.direction.array()).sum() +
                             full_penalty(om + dir.direction, lambda) -
                             full_penalty(om, lambda);

    double tau = 1.0;
    int backtracks = 0;
    bool accepted = false;
    for (; backtracks <= config.max_backtracks; ++backtracks) {
      const double diff = objective_difference(om, w, dir.direction,
                                               dir.s_direction, tau, lambda);
      if (diff <= config.armijo_alpha * tau * predicted) {
        accepted = true;
        break;
      }
      tau *= config.c;
    }
    if (!accepted) {
      // A predicted decrease at rounding level means there is nothing left
      // to gain; anything larger is a genuine failure.
      if (predicted < -1e-15 * std::max(1.0, std::abs(f))) {
        throw StepUnderflowError(k, config.max_backtracks, tau / config.c, f);
      }
      tau = 0.0;
      backtracks = config.max_backtracks;
    }

    if (tau > 0.0) {
      omega = ConcentrationMatrix::from_dense(om + tau * dir.direction);
      w = omega.left_multiply(s.values());
    }
    const double f_next = smooth_value(omega, w) + penalty_value(omega, lambda);
    const double delta_subg =
        subgradient_residual(omega, smooth_gradient(omega, w), lambda);
    const double delta_term =
        std::abs(f_next - f) / (f != 0.0 ? std::abs(f) : 1.0);
    f = f_next;
    result.delta_subg = delta_subg;
    result.trace.push_back(detail::make_record(k, f, delta_subg, delta_term,
                                               tau, backtracks, omega, clock));
    result.iterations = k;
    if (detail::is_converged(delta_subg, delta_term, config)) {
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
