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

#include "concord/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "concord/error.hpp"

namespace concord {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(message), line_(line), column_(column) {}

namespace {

std::string underflow_message(int iteration, int backtracks, double step,
                              double objective) {
  std::ostringstream os;
  os << "step size underflow at iteration " << iteration << " after "
     << backtracks << " backtracks (last step " << step << ", objective "
     << objective << ")";
  return os.str();
}

}  // namespace

StepUnderflowError::StepUnderflowError(int iteration, int backtracks,
                                       double last_step, double objective)
    : Error(underflow_message(iteration, backtracks, last_step, objective)),
      iteration_(iteration),
      backtracks_(backtracks),
      last_step_(last_step),
      objective_(objective) {}

// ---------------------------------------------------------------------------
// DataMatrix

DataMatrix::DataMatrix(Matrix values, bool centered)
    : values_(std::move(values)), centered_(centered) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw InvalidArgument("data matrix must have n >= 1 and p >= 1");
  }
  if (!values_.allFinite()) {
    throw InvalidArgument("data matrix contains non-finite values");
  }
  if (centered_) {
    const double scale = static_cast<double>(values_.rows()) *
                         std::max(values_.cwiseAbs().maxCoeff(), 1e-300);
    const Vector sums = values_.colwise().sum().transpose();
    for (Index j = 0; j < sums.size(); ++j) {
      if (std::abs(sums(j)) > 1e-10 * scale) {
        throw InvalidArgument("column " + std::to_string(j + 1) +
                              " is flagged centered but does not sum to 0");
      }
    }
  }
}

DataMatrix DataMatrix::centered_copy() const {
  if (values_.rows() < 2) {
    throw InvalidArgument("centering requires at least 2 observations");
  }
  Matrix centered = values_;
  centered.rowwise() -= values_.colwise().mean();
  return DataMatrix(std::move(centered), true);
}

// ---------------------------------------------------------------------------
// CovarianceMatrix

CovarianceMatrix::CovarianceMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw DimensionError("covariance matrix must be square");
  }
  if (values_.rows() < 1) {
    throw InvalidArgument("covariance matrix must be at least 1 x 1");
  }
  if (!values_.allFinite()) {
    throw InvalidArgument("covariance matrix contains non-finite values");
  }
  const double scale = std::max(values_.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (values_ - values_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw InvalidArgument("covariance matrix is not symmetric");
  }
  values_ = 0.5 * (values_ + values_.transpose()).eval();

  // Eigen flags a nonzero pivot after an exact zero one as a numerical
  // issue, which rounding triggers on every rank-deficient S (n < p). Only
  // the pivot values decide here.
  const Eigen::LDLT<Matrix> ldlt(values_);
  const double diag_scale = std::max(values_.diagonal().maxCoeff(), 1e-300);
  if (!ldlt.vectorD().allFinite() ||
      ldlt.vectorD().minCoeff() < -1e-10 * diag_scale) {
    throw InvalidArgument("covariance matrix is not positive semidefinite");
  }
}

CovarianceMatrix CovarianceMatrix::identity(Index p) {
  return CovarianceMatrix(Matrix::Identity(p, p));
}

bool CovarianceMatrix::has_positive_diagonal() const {
  return values_.diagonal().minCoeff() > 0.0;
}

void CovarianceMatrix::require_positive_diagonal() const {
  std::string bad;
  for (Index i = 0; i < dim(); ++i) {
    if (!(values_(i, i) > 0.0)) {
      if (!bad.empty()) bad += ", ";
      bad += std::to_string(i + 1);
    }
  }
  if (!bad.empty()) {
    throw InvalidArgument("zero-variance variables (drop them first): " + bad);
  }
}

// ---------------------------------------------------------------------------
// ConcentrationMatrix

ConcentrationMatrix::ConcentrationMatrix(Vector diag,
                                         std::vector<OffDiagEntry> upper)
    : diag_(std::move(diag)) {
  const Index p = diag_.size();
  for (auto& e : upper) {
    if (e.row > e.col) std::swap(e.row, e.col);
    if (e.row == e.col || e.row < 0 || e.col >= p) {
      throw InvalidArgument("off-diagonal entry (" + std::to_string(e.row) +
                            "," + std::to_string(e.col) + ") out of range");
    }
  }
  std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < upper.size(); ++k) {
    if (upper[k].row == upper[k - 1].row && upper[k].col == upper[k - 1].col) {
      throw InvalidArgument("duplicate off-diagonal entry (" +
                            std::to_string(upper[k].row + 1) + "," +
                            std::to_string(upper[k].col + 1) + ")");
    }
  }
  upper_.reserve(upper.size());
  for (const auto& e : upper) {
    if (e.value != 0.0) upper_.push_back(e);
  }
}

ConcentrationMatrix ConcentrationMatrix::identity(Index p) {
  return ConcentrationMatrix(Vector::Ones(p), {});
}

ConcentrationMatrix ConcentrationMatrix::diagonal(Vector diag) {
  return ConcentrationMatrix(std::move(diag), {});
}

ConcentrationMatrix ConcentrationMatrix::from_dense(const Matrix& dense) {
  if (dense.rows() != dense.cols()) {
    throw DimensionError("concentration matrix must be square");
  }
  std::vector<OffDiagEntry> upper;
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = i + 1; j < dense.cols(); ++j) {
      if (dense(i, j) != 0.0) upper.push_back({i, j, dense(i, j)});
    }
  }
  return ConcentrationMatrix(dense.diagonal(), std::move(upper));
}

std::size_t ConcentrationMatrix::nnz() const {
  return static_cast<std::size_t>(dim()) + 2 * upper_.size();
}

double ConcentrationMatrix::nz_percent() const {
  const double p = static_cast<double>(dim());
  if (p < 2) return 0.0;
  return 100.0 * 2.0 * static_cast<double>(upper_.size()) / (p * p - p);
}

double ConcentrationMatrix::operator()(Index i, Index j) const {
  if (i == j) return diag_(i);
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(
      upper_.begin(), upper_.end(), std::pair{i, j},
      [](const OffDiagEntry& e, const std::pair<Index, Index>& key) {
        return e.row != key.first ? e.row < key.first : e.col < key.second;
      });
  if (it != upper_.end() && it->row == i && it->col == j) return it->value;
  return 0.0;
}

Matrix ConcentrationMatrix::to_dense() const {
  Matrix dense = diag_.asDiagonal();
  for (const auto& e : upper_) {
    dense(e.row, e.col) = e.value;
    dense(e.col, e.row) = e.value;
  }
  return dense;
}

double ConcentrationMatrix::frobenius_norm() const {
  double sum = diag_.squaredNorm();
  for (const auto& e : upper_) sum += 2.0 * e.value * e.value;
  return std::sqrt(sum);
}

Matrix ConcentrationMatrix::left_multiply(const Matrix& s) const {
  if (s.rows() != dim() || s.cols() != dim()) {
    throw DimensionError("dimension mismatch in S * Omega");
  }
  Matrix w(dim(), dim());
  for (Index i = 0; i < dim(); ++i) w.col(i).noalias() = diag_(i) * s.col(i);
  for (const auto& e : upper_) {
    w.col(e.col).noalias() += e.value * s.col(e.row);
    w.col(e.row).noalias() += e.value * s.col(e.col);
  }
  return w;
}

// ---------------------------------------------------------------------------
// PenaltyMatrix

PenaltyMatrix PenaltyMatrix::uniform(Index p, double lambda) {
  if (p < 1) throw InvalidArgument("penalty dimension must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite nonnegative number");
  }
  return PenaltyMatrix(p, lambda, std::nullopt);
}

PenaltyMatrix PenaltyMatrix::from_dense(Matrix weights) {
  if (weights.rows() != weights.cols() || weights.rows() < 1) {
    throw DimensionError("penalty matrix must be square");
  }
  if (!weights.allFinite()) {
    throw InvalidArgument("penalty matrix contains non-finite values");
  }
  if (weights.minCoeff() < 0.0) {
    throw InvalidArgument("penalty entries must be nonnegative");
  }
  if (weights.diagonal().cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidArgument("penalty diagonal must be exactly zero");
  }
  if (weights != weights.transpose()) {
    throw InvalidArgument("penalty matrix must be symmetric");
  }
  const double top = weights.maxCoeff();
  const Index p = weights.rows();
  return PenaltyMatrix(p, top, std::move(weights));
}

double PenaltyMatrix::min_offdiag() const {
  if (!weights_ || p_ < 2) return lambda_;
  double m = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < p_; ++j) {
    for (Index i = 0; i < j; ++i) m = std::min(m, (*weights_)(i, j));
  }
  return m;
}

PenaltyMatrix PenaltyMatrix::scaled(double factor) const {
  if (!(factor >= 0.0)) throw InvalidArgument("penalty scale must be >= 0");
  if (weights_) return PenaltyMatrix(p_, lambda_ * factor, *weights_ * factor);
  return PenaltyMatrix(p_, lambda_ * factor, std::nullopt);
}

}  // namespace concord
