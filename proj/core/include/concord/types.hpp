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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace concord {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// n x p observation matrix, rows are observations.
class DataMatrix {
 public:
  // Throws InvalidArgument when empty, or when `centered` is claimed but some
  // column sum exceeds 1e-10 * n * max|value|.
  explicit DataMatrix(Matrix values, bool centered = false);

  Index observations() const { return values_.rows(); }
  Index variables() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  bool centered() const { return centered_; }

  // Copy with every column mean removed. Requires n >= 2.
  DataMatrix centered_copy() const;

 private:
  Matrix values_;
  bool centered_;
};

// Dense symmetric positive semidefinite p x p matrix.
class CovarianceMatrix {
 public:
  // Rejects non-square input, asymmetry beyond 1e-12 * max|s| and negative
  // pivots (< -1e-10 * max s_ii) in a pivoted LDL^T factorization. The stored
  // matrix is exactly symmetric.
  explicit CovarianceMatrix(Matrix values);

  static CovarianceMatrix identity(Index p);

  Index dim() const { return values_.rows(); }
  const Matrix& values() const { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

  bool has_positive_diagonal() const;
  // Throws InvalidArgument listing zero-variance indices.
  void require_positive_diagonal() const;

 private:
  Matrix values_;
};

// Upper-triangle off-diagonal entry, row < col.
struct OffDiagEntry {
  Index row;
  Index col;
  double value;

  friend bool operator==(const OffDiagEntry&, const OffDiagEntry&) = default;
};

// Symmetric p x p estimate: dense diagonal plus sparse upper triangle.
//
// Off-diagonal entries are kept sorted row-major with no duplicates and no
// stored zeros, so two matrices with equal contents have equal storage and
// every reduction over them runs in the same order.
class ConcentrationMatrix {
 public:
  ConcentrationMatrix() = default;
  ConcentrationMatrix(Vector diag, std::vector<OffDiagEntry> upper);

  static ConcentrationMatrix identity(Index p);
  static ConcentrationMatrix diagonal(Vector diag);
  // Reads the diagonal and the upper triangle; exact zeros are dropped.
  static ConcentrationMatrix from_dense(const Matrix& dense);

  Index dim() const { return diag_.size(); }
  const Vector& diag() const { return diag_; }
  std::span<const OffDiagEntry> upper() const { return upper_; }

  // Stored unordered pairs.
  std::size_t offdiag_pairs() const { return upper_.size(); }
  // Nonzeros of the full symmetric matrix (diagonal counted as stored).
  std::size_t nnz() const;
  // 100 * 2 * pairs / (p^2 - p); 0 for p = 1.
  double nz_percent() const;

  double operator()(Index i, Index j) const;
  Matrix to_dense() const;
  double frobenius_norm() const;
  double min_diag() const { return diag_.minCoeff(); }
  double max_diag() const { return diag_.maxCoeff(); }
  bool has_positive_diagonal() const { return diag_.size() > 0 && min_diag() > 0.0; }

  // S * Omega, touching only the stored nonzeros: O(p * nnz).
  Matrix left_multiply(const Matrix& s) const;

  friend bool operator==(const ConcentrationMatrix& a,
                         const ConcentrationMatrix& b) {
    return a.diag_ == b.diag_ && a.upper_ == b.upper_;
  }

 private:
  Vector diag_;
  std::vector<OffDiagEntry> upper_;
};

// Symmetric nonnegative penalty with zero diagonal: either lambda on every
// off-diagonal slot or a full per-entry matrix.
class PenaltyMatrix {
 public:
  static PenaltyMatrix uniform(Index p, double lambda);
  static PenaltyMatrix from_dense(Matrix weights);

  Index dim() const { return p_; }
  bool is_uniform() const { return !weights_.has_value(); }
  // The scalar lambda for uniform penalties; the largest weight otherwise.
  double lambda() const { return lambda_; }
  double min_offdiag() const;

  double operator()(Index i, Index j) const {
    if (i == j) return 0.0;
    return weights_ ? (*weights_)(i, j) : lambda_;
  }

  PenaltyMatrix scaled(double factor) const;

 private:
  PenaltyMatrix(Index p, double lambda, std::optional<Matrix> weights)
      : p_(p), lambda_(lambda), weights_(std::move(weights)) {}

  Index p_ = 0;
  double lambda_ = 0.0;
  std::optional<Matrix> weights_;
};

}  // namespace concord
