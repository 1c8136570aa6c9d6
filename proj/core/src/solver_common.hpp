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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "concord/solvers.hpp"

namespace concord::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }
  double seconds() const { return elapsed_ms() / 1000.0; }

 private:
  std::chrono::steady_clock::time_point start_;
};

// |now - before| / max(1, |before|).
inline double relative_change(double now, double before) {
  return std::abs(now - before) / std::max(1.0, std::abs(before));
}

// x - log(1 + x), accurate near 0; +inf for x <= -1.
inline double log_barrier_excess(double x) {
  if (!(x > -1.0)) return std::numeric_limits<double>::infinity();
  if (std::abs(x) < 1e-4) return x * x * (0.5 - x / 3.0 + x * x / 4.0);
  return x - std::log1p(x);
}

// Checks dimensions and s_ii > 0, returns the validated starting point.
ConcentrationMatrix prepare(const CovarianceMatrix& s,
                            const PenaltyMatrix& lambda,
                            const SolverConfig& config);

IterationRecord make_record(int iter, double objective, double delta_subg,
                            double delta_func, double tau, int backtracks,
                            const ConcentrationMatrix& omega,
                            const Stopwatch& clock);

inline bool is_converged(double delta_subg, double delta_func,
                         const SolverConfig& config) {
  return delta_subg <= config.eps_subg && delta_func <= config.eps_func;
}

// Visits the union of stored entries of a and b as f(row, col, a - b),
// diagonal first, then the upper triangle in row-major order.
template <class F>
void for_each_difference(const ConcentrationMatrix& a,
                         const ConcentrationMatrix& b, F&& f) {
  for (Index i = 0; i < a.dim(); ++i) f(i, i, a.diag()(i) - b.diag()(i));
  auto ua = a.upper();
  auto ub = b.upper();
  std::size_t x = 0, y = 0;
  auto less = [](const OffDiagEntry& l, const OffDiagEntry& r) {
    return l.row != r.row ? l.row < r.row : l.col < r.col;
  };
  while (x < ua.size() || y < ub.size()) {
    if (y == ub.size() || (x < ua.size() && less(ua[x], ub[y]))) {
      f(ua[x].row, ua[x].col, ua[x].value);
      ++x;
    } else if (x == ua.size() || less(ub[y], ua[x])) {
      f(ub[y].row, ub[y].col, -ub[y].value);
      ++y;
    } else {
      f(ua[x].row, ua[x].col, ua[x].value - ub[y].value);
      ++x;
      ++y;
    }
  }
}

// a + beta * (a - b) over the union of supports; exact zeros dropped.
ConcentrationMatrix extrapolate(const ConcentrationMatrix& a,
                                const ConcentrationMatrix& b, double beta);

// Dense a - b.
Matrix dense_difference(const ConcentrationMatrix& a,
                        const ConcentrationMatrix& b);

// Exact-arithmetic-equivalent form of the sufficient descent test: returns
//   h1(cand) - h1(theta) - <cand - theta, G(theta)>
// evaluated as sum_i [x_i - log1p(x_i)] + 1/2 <D, S D>, with D = cand - theta,
// x_i = d_ii / theta_ii, and S D = w_cand - w_theta. Also reports ||D||_F^2.
double smooth_linearization_gap(const ConcentrationMatrix& theta,
                                const Matrix& w_theta,
                                const ConcentrationMatrix& cand,
                                const Matrix& w_cand, double* diff_sq_norm);

}  // namespace concord::detail
