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

#include "concord/prox.hpp"

#include <cmath>
#include <vector>

#include "concord/error.hpp"
#include "concord/model.hpp"

namespace concord {

ConcentrationMatrix soft_threshold(const Matrix& x, const PenaltyMatrix& lambda,
                                   double scale) {
  const Index p = x.rows();
  if (x.cols() != p) throw DimensionError("soft_threshold needs a square matrix");
  detail::require_same_dim(p, lambda.dim(), "X vs Lambda");
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("soft_threshold: negative threshold scale");
  }
  std::vector<OffDiagEntry> upper;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) {
      const double v = soft_threshold(x(i, j), scale * lambda(i, j));
      if (v != 0.0) upper.push_back({i, j, v});
    }
  }
  return ConcentrationMatrix(x.diagonal(), std::move(upper));
}

ConcentrationMatrix prox_step(const ConcentrationMatrix& omega,
                              const Matrix& gradient, double tau,
                              const PenaltyMatrix& lambda) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("prox_step: step size must be positive");
  }
  detail::require_same_dim(omega.dim(), gradient.rows(), "Omega vs G");
  Matrix x = -tau * gradient;
  x.diagonal() += omega.diag();
  for (const auto& e : omega.upper()) x(e.row, e.col) += e.value;
  return soft_threshold(x, lambda, tau);
}

}  // namespace concord
