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

#include "concord/types.hpp"

namespace concord {

// sign(x) * max(|x| - t, 0).
inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Entrywise soft-thresholding of a symmetric matrix with thresholds
// scale * Lambda. Only the diagonal and upper triangle of `x` are read; the
// diagonal passes through because Lambda_ii = 0. Shrunk entries are dropped
// from the sparse result.
ConcentrationMatrix soft_threshold(const Matrix& x, const PenaltyMatrix& lambda,
                                   double scale = 1.0);

// S_{tau Lambda}(Omega - tau G). The result may have a nonpositive diagonal.
ConcentrationMatrix prox_step(const ConcentrationMatrix& omega,
                              const Matrix& gradient, double tau,
                              const PenaltyMatrix& lambda);

}  // namespace concord
