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

SolverResult solve(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                   const SolverConfig& config) {
  switch (config.variant) {
    case Variant::kConcord: return solve_coordinatewise(s, lambda, config);
    case Variant::kIsta0:
    case Variant::kIsta1: return solve_ista(s, lambda, config);
    case Variant::kFista0:
    case Variant::kFista1: return solve_fista(s, lambda, config);
    case Variant::kPnopt: return solve_pnopt(s, lambda, config);
  }
  throw InvalidArgument("unknown variant");
}

SolverResult solve(const DataMatrix& y, const PenaltyMatrix& lambda,
                   const SolverConfig& config, bool center) {
  if (config.variant == Variant::kConcord) {
    return solve_coordinatewise(y, lambda, config, center);
  }
  const detail::Stopwatch clock;
  const CovarianceMatrix s = sample_covariance(y, center);
  SolverResult result = solve(s, lambda, config);
  result.seconds = clock.seconds();
  return result;
}

}  // namespace concord
