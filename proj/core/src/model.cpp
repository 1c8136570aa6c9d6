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

#include "concord/model.hpp"

#include <cmath>
#include <limits>

#include "concord/error.hpp"

namespace concord {

namespace detail {
void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string("dimension mismatch: ") + what + " (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}
}  // namespace detail

namespace {

void require_positive_diag(const ConcentrationMatrix& omega) {
  if (!omega.has_positive_diagonal()) {
    throw InvalidArgument("concentration matrix has a nonpositive diagonal");
  }
}

}  // namespace

CovarianceMatrix sample_covariance(const DataMatrix& y, bool center,
                                   std::vector<Index>* zero_variance) {
  const DataMatrix* source = &y;
  DataMatrix centered_storage = y;
  if (center && !y.centered()) {
    centered_storage = y.centered_copy();
    source = &centered_storage;
  }
  const Matrix& v = source->values();
  const double n = static_cast<double>(v.rows());
  Matrix s = Matrix::Zero(v.cols(), v.cols());
  s.selfadjointView<Eigen::Lower>().rankUpdate(v.transpose(), 1.0 / n);
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  if (zero_variance != nullptr) {
    for (Index j = 0; j < s.rows(); ++j) {
      if (!(s(j, j) > 0.0)) zero_variance->push_back(j);
    }
  }
  return CovarianceMatrix(std::move(s));
}

double smooth_value(const ConcentrationMatrix& omega, const Matrix& w) {
  detail::require_same_dim(omega.dim(), w.rows(), "Omega vs S*Omega");
  const auto& d = omega.diag();
  if (!(d.minCoeff() > 0.0)) return std::numeric_limits<double>::infinity();

  // tr(Omega W) over the stored nonzeros of Omega only.
  double trace = 0.0;
  double log_det = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    trace += d(i) * w(i, i);
    log_det += std::log(d(i));
  }
  for (const auto& e : omega.upper()) {
    trace += e.value * (w(e.col, e.row) + w(e.row, e.col));
  }
  return -log_det + 0.5 * trace;
}

double smooth_value(const ConcentrationMatrix& omega,
                    const CovarianceMatrix& s) {
  detail::require_same_dim(omega.dim(), s.dim(), "Omega vs S");
  if (!omega.has_positive_diagonal()) {
    return std::numeric_limits<double>::infinity();
  }
  return smooth_value(omega, omega.left_multiply(s.values()));
}

double penalty_value(const ConcentrationMatrix& omega,
                     const PenaltyMatrix& lambda) {
  detail::require_same_dim(omega.dim(), lambda.dim(), "Omega vs Lambda");
  double sum = 0.0;
  for (const auto& e : omega.upper()) {
    sum += (lambda(e.row, e.col) + lambda(e.col, e.row)) * std::abs(e.value);
  }
  return sum;
}

double objective(const ConcentrationMatrix& omega, const CovarianceMatrix& s,
                 const PenaltyMatrix& lambda) {
  const double h1 = smooth_value(omega, s);
  if (!std::isfinite(h1)) return h1;
  return h1 + penalty_value(omega, lambda);
}

Matrix smooth_gradient(const ConcentrationMatrix& omega, const Matrix& w) {
  detail::require_same_dim(omega.dim(), w.rows(), "Omega vs S*Omega");
  require_positive_diag(omega);
  Matrix g = 0.5 * (w + w.transpose());
  g.diagonal() -= omega.diag().cwiseInverse();
  return g;
}

Matrix smooth_gradient(const ConcentrationMatrix& omega,
                       const CovarianceMatrix& s) {
  detail::require_same_dim(omega.dim(), s.dim(), "Omega vs S");
  require_positive_diag(omega);
  return smooth_gradient(omega, omega.left_multiply(s.values()));
}

double hessian_quadratic_form(const ConcentrationMatrix& omega,
                              const CovarianceMatrix& s, const Matrix& w) {
  detail::require_same_dim(omega.dim(), s.dim(), "Omega vs S");
  detail::require_same_dim(w.rows(), s.dim(), "W vs S");
  detail::require_same_dim(w.cols(), s.dim(), "W vs S");
  require_positive_diag(omega);
  const Vector inv = omega.diag().cwiseInverse();
  const double barrier = (w.diagonal().cwiseProduct(inv)).squaredNorm();
  // tr(W S W) = <W^T, S W> = <W, S W> for symmetric W.
  const Matrix sw = s.values() * w;
  return barrier + (w.transpose().array() * sw.array()).sum();
}

Matrix minimal_subgradient(const ConcentrationMatrix& omega,
                           const Matrix& gradient,
                           const PenaltyMatrix& lambda) {
  const Index p = omega.dim();
  detail::require_same_dim(p, gradient.rows(), "Omega vs gradient");
  detail::require_same_dim(p, lambda.dim(), "Omega vs Lambda");
  Matrix r(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      const double g = gradient(i, j);
      const double excess = std::abs(g) - lambda(i, j);
      r(i, j) = excess > 0.0 ? std::copysign(excess, g) : 0.0;
    }
    r(j, j) = gradient(j, j);
  }
  for (const auto& e : omega.upper()) {
    const double sign = e.value > 0.0 ? 1.0 : -1.0;
    r(e.row, e.col) = gradient(e.row, e.col) + lambda(e.row, e.col) * sign;
    r(e.col, e.row) = gradient(e.col, e.row) + lambda(e.col, e.row) * sign;
  }
  return r;
}

double subgradient_residual(const ConcentrationMatrix& omega,
                            const Matrix& gradient,
                            const PenaltyMatrix& lambda) {
  const double norm = omega.frobenius_norm();
  if (!(norm > 0.0)) {
    throw InvalidArgument("subgradient residual undefined for Omega = 0");
  }
  return minimal_subgradient(omega, gradient, lambda).norm() / norm;
}

double subgradient_residual(const ConcentrationMatrix& omega,
                            const CovarianceMatrix& s,
                            const PenaltyMatrix& lambda) {
  return subgradient_residual(omega, smooth_gradient(omega, s), lambda);
}

}  // namespace concord
