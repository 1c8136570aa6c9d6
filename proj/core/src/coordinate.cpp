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

#include "concord/error.hpp"
#include "concord/model.hpp"
#include "concord/prox.hpp"
#include "solver_common.hpp"

namespace concord {

namespace {

// Pair update from the two partial sums
//   b = sum_{j' != j} omega_ij' s_jj' + sum_{i' != i} omega_i'j s_ii'.
// The pair appears twice in the full-matrix penalty, hence 2 * penalty.
double pair_minimizer(double b, double penalty, double s_ii, double s_jj) {
  return soft_threshold(-b, 2.0 * penalty) / (s_ii + s_jj);
}

// Positive root of s_ii x^2 + b x - 1 = 0.
double diag_minimizer(double b, double s_ii) {
  return (-b + std::sqrt(b * b + 4.0 * s_ii)) / (2.0 * s_ii);
}

void check_indices(const Matrix& omega, const CovarianceMatrix& s, Index i,
                   Index j) {
  detail::require_same_dim(omega.rows(), s.dim(), "Omega vs S");
  detail::require_same_dim(omega.cols(), s.dim(), "Omega vs S");
  if (i < 0 || j < 0 || i >= s.dim() || j >= s.dim()) {
    throw InvalidArgument("coordinate index out of range");
  }
}

struct SweepState {
  double f = 0.0;
  double delta_subg = 0.0;
};

SweepState evaluate(const ConcentrationMatrix& omega, const Matrix& w,
                    double h1, const PenaltyMatrix& lambda) {
  SweepState st;
  st.f = h1 + penalty_value(omega, lambda);
  st.delta_subg = subgradient_residual(omega, smooth_gradient(omega, w), lambda);
  return st;
}

}  // namespace

double coordinate_update_offdiag(const Matrix& omega, const CovarianceMatrix& s,
                                 double penalty, Index i, Index j) {
  check_indices(omega, s, i, j);
  if (i == j) throw InvalidArgument("coordinate_update_offdiag needs i != j");
  if (!(penalty >= 0.0)) throw InvalidArgument("penalty must be nonnegative");
  const Matrix& sv = s.values();
  const double s_ii = sv(i, i);
  const double s_jj = sv(j, j);
  if (!(s_ii + s_jj > 0.0)) throw InvalidArgument("s_ii + s_jj must be > 0");
  const double w = omega(i, j);
  const double b = omega.col(i).dot(sv.col(j)) - w * s_jj +
                   omega.col(j).dot(sv.col(i)) - w * s_ii;
  return pair_minimizer(b, penalty, s_ii, s_jj);
}

double coordinate_update_diag(const Matrix& omega, const CovarianceMatrix& s,
                              Index i) {
  check_indices(omega, s, i, i);
  const Matrix& sv = s.values();
  const double s_ii = sv(i, i);
  if (!(s_ii > 0.0)) throw InvalidArgument("s_ii must be > 0");
  const double b = omega.col(i).dot(sv.col(i)) - omega(i, i) * s_ii;
  return diag_minimizer(b, s_ii);
}

SolverResult solve_coordinatewise(const CovarianceMatrix& s,
                                  const PenaltyMatrix& lambda,
                                  const SolverConfig& config) {
  const detail::Stopwatch clock;
  const ConcentrationMatrix start = detail::prepare(s, lambda, config);
  const Index p = s.dim();
  const Matrix& sv = s.values();

  SolverResult result;
  result.initial = start;
  Matrix w = start.left_multiply(sv);
  double f = smooth_value(start, w) + penalty_value(start, lambda);
  result.initial_objective = f;
  result.delta_subg =
      subgradient_residual(start, smooth_gradient(start, w), lambda);

  Matrix om = start.to_dense();
  ConcentrationMatrix omega = start;
  for (int k = 1; k <= config.max_iter; ++k) {
    for (Index i = 0; i < p; ++i) {
      for (Index j = i + 1; j < p; ++j) {
        const double v = coordinate_update_offdiag(om, s, lambda(i, j), i, j);
        om(i, j) = v;
        om(j, i) = v;
      }
    }
    for (Index i = 0; i < p; ++i) om(i, i) = coordinate_update_diag(om, s, i);

    omega = ConcentrationMatrix::from_dense(om);
    w = omega.left_multiply(sv);
    const SweepState st = evaluate(omega, w, smooth_value(omega, w), lambda);
    const double delta_func = detail::relative_change(st.f, f);
    f = st.f;
    result.delta_subg = st.delta_subg;
    result.trace.push_back(detail::make_record(k, f, st.delta_subg, delta_func,
                                               1.0, 0, omega, clock));
    result.iterations = k;
    if (detail::is_converged(st.delta_subg, delta_func, config)) {
      result.converged = true;
      break;
    }
  }
  result.estimate = std::move(omega);
  result.objective = f;
  result.seconds = clock.seconds();
  return result;
}

SolverResult solve_coordinatewise(const DataMatrix& data,
                                  const PenaltyMatrix& lambda,
                                  const SolverConfig& config, bool center) {
  const detail::Stopwatch clock;
  config.validate();
  const DataMatrix y_storage =
      (center && !data.centered()) ? data.centered_copy() : data;
  const Matrix& y = y_storage.values();
  const Index n = y.rows();
  const Index p = y.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  detail::require_same_dim(p, lambda.dim(), "Y vs Lambda");

  const Vector s_diag = y.colwise().squaredNorm().transpose() * inv_n;
  for (Index i = 0; i < p; ++i) {
    if (!(s_diag(i) > 0.0)) {
      throw InvalidArgument("zero-variance variable " + std::to_string(i + 1));
    }
  }
  ConcentrationMatrix omega =
      config.initial ? *config.initial
                     : ConcentrationMatrix::diagonal(
                           s_diag.cwiseSqrt().cwiseInverse());
  detail::require_same_dim(p, omega.dim(), "Y vs initial Omega");
  if (!omega.has_positive_diagonal()) {
    throw InvalidArgument("initial Omega must have a positive diagonal");
  }

  Matrix om = omega.to_dense();
  Matrix r = y * om;  // column i holds Y * omega_i
  // tr(Omega S Omega) = ||Y Omega||_F^2 / n
  auto h1_of = [&](const Matrix& resid, const Vector& d) {
    return -d.array().log().sum() + 0.5 * resid.squaredNorm() * inv_n;
  };

  SolverResult result;
  result.initial = omega;
  double f = h1_of(r, omega.diag()) + penalty_value(omega, lambda);
  result.initial_objective = f;
  {
    const Matrix w = y.transpose() * r * inv_n;
    result.delta_subg =
        subgradient_residual(omega, smooth_gradient(omega, w), lambda);
  }

  for (int k = 1; k <= config.max_iter; ++k) {
    for (Index i = 0; i < p; ++i) {
      for (Index j = i + 1; j < p; ++j) {
        const double old = om(i, j);
        const double b = y.col(j).dot(r.col(i)) * inv_n - old * s_diag(j) +
                         y.col(i).dot(r.col(j)) * inv_n - old * s_diag(i);
        const double v = pair_minimizer(b, lambda(i, j), s_diag(i), s_diag(j));
        const double delta = v - old;
        if (delta != 0.0) {
          om(i, j) = v;
          om(j, i) = v;
          r.col(i).noalias() += delta * y.col(j);
          r.col(j).noalias() += delta * y.col(i);
        }
      }
    }
    for (Index i = 0; i < p; ++i) {
      const double old = om(i, i);
      const double b = y.col(i).dot(r.col(i)) * inv_n - old * s_diag(i);
      const double v = diag_minimizer(b, s_diag(i));
      const double delta = v - old;
      if (delta != 0.0) {
        om(i, i) = v;
        r.col(i).noalias() += delta * y.col(i);
      }
    }

    omega = ConcentrationMatrix::from_dense(om);
    const Matrix w = y.transpose() * r * inv_n;
    const SweepState st = evaluate(omega, w, h1_of(r, omega.diag()), lambda);
    const double delta_func = detail::relative_change(st.f, f);
    f = st.f;
    result.delta_subg = st.delta_subg;
    result.trace.push_back(detail::make_record(k, f, st.delta_subg, delta_func,
                                               1.0, 0, omega, clock));
    result.iterations = k;
    if (detail::is_converged(st.delta_subg, delta_func, config)) {
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
