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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "concord/types.hpp"

namespace concord {

// Algorithm variants. Names follow the usual step-size naming:
//   concord    cyclic coordinate-wise descent
//   ccista_0   ISTA, constant initial step
//   ccista_1   ISTA, Barzilai-Borwein initial step
//   ccfista_0  FISTA, constant initial step
//   ccfista_1  FISTA, previous accepted step
//   pnopt      proximal Newton with a coordinate-descent inner solver
enum class Variant { kConcord, kIsta0, kIsta1, kFista0, kFista1, kPnopt };

std::string_view variant_name(Variant v);
// Throws InvalidArgument naming the accepted spellings.
Variant parse_variant(std::string_view name);
std::span<const Variant> all_variants();
// "concord, ccista_0, ..." for usage messages.
std::string variant_list();

struct SolverConfig {
  Variant variant = Variant::kIsta0;
  double tau0 = 1.0;          // initial step, in (0, 1]
  double c = 0.5;             // backtracking factor, in (0, 1)
  double eps_subg = 1e-5;
  double eps_func = 1e-8;
  int max_iter = 1000;
  double armijo_alpha = 1e-4; // pnopt sufficient decrease
  int max_backtracks = 60;
  // Starting point; diag(1/sqrt(s_ii)) when empty.
  std::optional<ConcentrationMatrix> initial;

  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double objective = 0.0;
  double delta_subg = 0.0;
  double delta_func = 0.0;
  double step_size = 0.0;
  int backtracks = 0;
  std::size_t nnz = 0;
  double elapsed_ms = 0.0;
  // Not serialized; kept for level-set envelope checks.
  double diag_min = 0.0;
  double diag_max = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct SolverResult {
  ConcentrationMatrix estimate;
  ConcentrationMatrix initial;
  bool converged = false;
  int iterations = 0;
  double initial_objective = 0.0;
  double objective = 0.0;
  double delta_subg = 0.0;
  double seconds = 0.0;
  IterationTrace trace;
};

// diag(1/sqrt(s_ii)): the minimizer over diagonal matrices.
ConcentrationMatrix default_initial(const CovarianceMatrix& s);

// ---------------------------------------------------------------------------
// Step-size machinery

struct LineSearchResult {
  double tau = 0.0;
  int backtracks = 0;
  ConcentrationMatrix candidate;
  Matrix product;  // S * candidate
  double smooth = 0.0;  // h1(candidate)
};

// Largest tau in {c^j tau_init : j = 0..max_backtracks} whose prox step from
// theta passes the quadratic upper-bound test
//   h1(Omega+) <= h1(theta) + <Omega+ - theta, G> + ||Omega+ - theta||^2 / (2 tau).
// A candidate with a nonpositive diagonal fails the test. Throws
// StepUnderflowError when every trial fails.
LineSearchResult line_search(const ConcentrationMatrix& theta,
                             const Matrix& gradient, double tau_init, double c,
                             const PenaltyMatrix& lambda,
                             const CovarianceMatrix& s,
                             int max_backtracks = 60);

// Same, reusing w = S * theta.
LineSearchResult line_search(const ConcentrationMatrix& theta, const Matrix& w,
                             const Matrix& gradient, double tau_init, double c,
                             const PenaltyMatrix& lambda,
                             const CovarianceMatrix& s, int max_backtracks = 60);

// tr(dO^T dO) / tr(dO^T dG), clamped to (0, 1e6]. Falls back to
// `previous_tau` when the denominator is nonpositive or the ratio is not
// finite.
double bb_initial_step(const Matrix& d_omega, const Matrix& d_gradient,
                       double previous_tau);

// (1 + sqrt(1 + 4 alpha^2)) / 2.
double fista_momentum(double alpha);

// ---------------------------------------------------------------------------
// Coordinate-wise updates on a dense symmetric Omega.

// Exact minimizer of F over the symmetric pair (i, j), i != j, with the other
// entries fixed. `penalty` is Lambda_ij; the pair is charged 2 * penalty.
double coordinate_update_offdiag(const Matrix& omega, const CovarianceMatrix& s,
                                 double penalty, Index i, Index j);

// Exact minimizer of F over omega_ii; always positive. Requires s_ii > 0.
double coordinate_update_diag(const Matrix& omega, const CovarianceMatrix& s,
                              Index i);

// ---------------------------------------------------------------------------
// Proximal Newton direction

struct NewtonDirection {
  Matrix direction;    // symmetric
  Matrix s_direction;  // S * direction
  int sweeps = 0;
};

// argmin_W <G, W> + 1/2 [sum_i w_ii^2 / omega_ii^2 + tr(W S W)]
//          + sum_{i != j} Lambda_ij |omega_ij + w_ij|
// by cyclic coordinate descent with active-set sweeps.
NewtonDirection pnopt_direction(const ConcentrationMatrix& omega,
                                const Matrix& gradient,
                                const CovarianceMatrix& s,
                                const PenaltyMatrix& lambda,
                                double tolerance = 1e-8);

// ---------------------------------------------------------------------------
// Solvers. All stop when delta_subg <= eps_subg AND delta_func <= eps_func,
// or after max_iter iterations (converged = false).

SolverResult solve_ista(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                        const SolverConfig& config);
SolverResult solve_fista(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                         const SolverConfig& config);
SolverResult solve_coordinatewise(const CovarianceMatrix& s,
                                  const PenaltyMatrix& lambda,
                                  const SolverConfig& config);
// Works on the n x p data through residuals R = Y Omega; one sweep costs
// O(n p^2) and S is never formed.
SolverResult solve_coordinatewise(const DataMatrix& y,
                                  const PenaltyMatrix& lambda,
                                  const SolverConfig& config,
                                  bool center = true);
SolverResult solve_pnopt(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                         const SolverConfig& config);

// Dispatch on config.variant.
SolverResult solve(const CovarianceMatrix& s, const PenaltyMatrix& lambda,
                   const SolverConfig& config);
// From data. Gradient methods form S first (timed as part of the solve); the
// coordinate-wise method runs on residuals.
SolverResult solve(const DataMatrix& y, const PenaltyMatrix& lambda,
                   const SolverConfig& config, bool center = true);

}  // namespace concord
