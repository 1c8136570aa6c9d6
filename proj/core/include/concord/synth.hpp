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
#include <cstdint>
#include <vector>

#include "concord/types.hpp"

namespace concord {

struct SynthSpec {
  Index p = 0;
  std::size_t pairs = 0;  // nonzero off-diagonal pairs in the truth
  Index n = 1;
  std::uint64_t seed = 0;
  double min_magnitude = 0.4;
  double max_magnitude = 0.8;

  void validate() const;
};

// 5 (p - 1) pairs, capped at p (p - 1) / 2. At p = 1000 this is 4995 pairs,
// a 1% edge density.
std::size_t default_pairs(Index p);

// Truth with exactly spec.pairs off-diagonal pairs chosen uniformly without
// replacement, values uniform on +-[min, max], and each diagonal entry equal
// to its row's absolute off-diagonal sum plus 1 (strictly diagonally
// dominant, hence positive definite).
ConcentrationMatrix generate_sparse_concentration(const SynthSpec& spec);

// n rows drawn i.i.d. from N(0, truth^{-1}) via triangular solves against
// the Cholesky factor of the truth. Throws InvalidArgument when the truth is
// not positive definite.
DataMatrix sample_gaussian(const ConcentrationMatrix& truth, Index n,
                           std::uint64_t seed);

// `count` log-spaced values from 1.05 * lambda_max down to 0.05 * lambda_max,
// both endpoints included. Throws InvalidArgument when lambda_max = 0.
std::vector<double> lambda_grid(const CovarianceMatrix& s, int count);

}  // namespace concord
