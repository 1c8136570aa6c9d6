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

#include "concord/certificates.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "concord/error.hpp"
#include "concord/model.hpp"

namespace concord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest z > 0 with phi(z) <= bound, where phi is convex, tends to +inf,
// and is increasing on [z_min, inf). Returns 0 when phi(z_min) > bound.
template <class Phi>
double largest_root(Phi phi, double z_min, double bound) {
  if (phi(z_min) > bound) return 0.0;
  double lo = z_min;
  double hi = std::max(2.0 * z_min, 1.0);
  while (phi(hi) <= bound) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return kInf;
  }
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) <= bound ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double spectral_norm(const Matrix& s) {
  const Index p = s.rows();
  std::mt19937_64 gen(20140101);
  Vector v(p);
  for (Index i = 0; i < p; ++i) {
    v(i) = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
  }
  v.normalize();
  double value = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Vector next = s * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    const bool done = std::abs(norm - value) <= 1e-10 * norm;
    value = norm;
    v = std::move(next);
    if (done) break;
  }
  return value;
}

LevelSetBounds level_set_bounds(const CovarianceMatrix& s,
                                const PenaltyMatrix& lambda, double level) {
  detail::require_same_dim(s.dim(), lambda.dim(), "S vs Lambda");
  s.require_positive_diagonal();
  if (!std::isfinite(level)) {
    throw InvalidArgument("level-set bounds need a finite level");
  }
  const Index p = s.dim();
  const double pd = static_cast<double>(p);

  // Pivoted LDL^T: P S P^T = L D L^T, so S/2 = U^T U in the permuted basis
  // with U = sqrt(D/2) L^T upper triangular. The diagonal envelope does not
  // depend on the ordering of the variables.
  const Eigen::LDLT<Matrix> ldlt(s.values());
  const Vector d = ldlt.vectorD().cwiseMax(0.0);
  const Matrix u = (d / 2.0).cwiseSqrt().asDiagonal() *
                   Matrix(ldlt.matrixL()).transpose();

  const double lam = lambda.min_offdiag();
  double upper = 0.0;
  for (Index i = 0; i < p; ++i) {
    const double col_norm = u.col(i).head(i + 1).norm();
    Index k = 0;
    while (k <= i && !(std::abs(u(k, i)) > 1e-12 * col_norm)) ++k;
    if (k > i) return {level, 0.0, kInf, -kInf, spectral_norm(s.values()), kInf};
    const double u_ki = std::abs(u(k, i));
    double u_bar = 0.0;
    for (Index j = k; j < p; ++j) {
      if (j != i) u_bar = std::max(u_bar, std::abs(u(k, j)));
    }
    const double lam_bar = u_bar > 0.0 ? lam / (2.0 * u_bar) : 0.0;
    const double m_bar = level + lam_bar * lam_bar - pd * std::log(u_ki);

    // z = |u_ki omega_ii|. With x the coupling term, either x >= 0 and
    // -p log z + z^2 <= m_bar, or x < 0 and -p log z + 2 lam_bar z <= m_bar.
    double z = largest_root(
        [&](double t) { return -pd * std::log(t) + t * t; },
        std::sqrt(pd / 2.0), m_bar);
    if (u_bar > 0.0) {
      if (lam_bar == 0.0) {
        z = kInf;
      } else {
        z = std::max(z, largest_root(
                            [&](double t) {
                              return -pd * std::log(t) + 2.0 * lam_bar * t;
                            },
                            pd / (2.0 * lam_bar), m_bar));
      }
    }
    upper = std::max(upper, z / u_ki);
  }

  LevelSetBounds out;
  out.level = level;
  out.upper = upper;
  out.log_lower = -level - (pd - 1.0) * std::log(upper);
  out.lower = std::exp(out.log_lower);
  out.spectral_norm = spectral_norm(s.values());
  out.lipschitz = 1.0 / (out.lower * out.lower) + out.spectral_norm;
  return out;
}

KktReport kkt_check(const ConcentrationMatrix& omega, const CovarianceMatrix& s,
                    const PenaltyMatrix& lambda, double tolerance) {
  const Matrix g = smooth_gradient(omega, s);
  detail::require_same_dim(omega.dim(), lambda.dim(), "Omega vs Lambda");
  const Index p = omega.dim();
  KktReport r;
  r.tolerance = tolerance;
  r.diag_violation = g.diagonal().cwiseAbs().maxCoeff();

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> stored =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(p, p, false);
  for (const auto& e : omega.upper()) {
    stored(e.row, e.col) = true;
    stored(e.col, e.row) = true;
    const double sign = e.value > 0.0 ? 1.0 : -1.0;
    r.nonzero_violation =
        std::max({r.nonzero_violation,
                  std::abs(g(e.row, e.col) + lambda(e.row, e.col) * sign),
                  std::abs(g(e.col, e.row) + lambda(e.col, e.row) * sign)});
  }
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (i == j || stored(i, j)) continue;
      r.zero_excess =
          std::max(r.zero_excess, std::abs(g(i, j)) - lambda(i, j));
    }
  }
  r.pass = r.diag_violation <= tolerance && r.nonzero_violation <= tolerance &&
           r.zero_excess <= tolerance;
  return r;
}

double dual_feasibility_from_data(const DataMatrix& data,
                                  const ConcentrationMatrix& omega,
                                  const PenaltyMatrix& lambda, bool center) {
  const DataMatrix y_storage =
      (center && !data.centered()) ? data.centered_copy() : data;
  const Matrix& y = y_storage.values();
  detail::require_same_dim(y.cols(), omega.dim(), "Y vs Omega");
  detail::require_same_dim(y.cols(), lambda.dim(), "Y vs Lambda");
  const Index p = y.cols();
  const double n = static_cast<double>(y.rows());

  // Column i of z is the regression residual z_i = Y omega_i, and
  // (Y^T z)(j, i) = Y_j^T z_i. The dual coordinate for pair (i, j) is
  // Y_j^T z_i + Y_i^T z_j, which equals n * 2 * G_ij in the per-sample
  // scaling (S = Y^T Y / n, G = (S Omega + Omega S) / 2 off the diagonal).
  // The penalty on the pair in that scaling is 2 * Lambda_ij because the
  // matrix penalty charges (i, j) and (j, i) separately.
  const Matrix z = y * omega.to_dense();
  const Matrix cross = y.transpose() * z;

  double excess = 0.0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < j; ++i) {
      if (omega(i, j) != 0.0) continue;
      const double coord = std::abs(cross(j, i) + cross(i, j)) / n;
      excess = std::max(excess, coord - 2.0 * lambda(i, j));
    }
  }
  return excess;
}

double lambda_max(const CovarianceMatrix& s) {
  s.require_positive_diagonal();
  const Matrix& v = s.values();
  const Vector inv_sd = v.diagonal().cwiseSqrt().cwiseInverse();
  double best = 0.0;
  for (Index j = 0; j < v.cols(); ++j) {
    for (Index i = 0; i < j; ++i) {
      best = std::max(best,
                      0.5 * std::abs(v(i, j)) * (inv_sd(i) + inv_sd(j)));
    }
  }
  return best;
}

}  // namespace concord
