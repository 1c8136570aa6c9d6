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

#include "solver_common.hpp"

#include <algorithm>
#include <array>

#include "concord/error.hpp"
#include "concord/model.hpp"

namespace concord {

namespace {

constexpr std::array<Variant, 6> kVariants = {
    Variant::kConcord, Variant::kIsta0,  Variant::kIsta1,
    Variant::kFista0,  Variant::kFista1, Variant::kPnopt};

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kConcord: return "concord";
    case Variant::kIsta0: return "ccista_0";
    case Variant::kIsta1: return "ccista_1";
    case Variant::kFista0: return "ccfista_0";
    case Variant::kFista1: return "ccfista_1";
    case Variant::kPnopt: return "pnopt";
  }
  return "unknown";
}

std::span<const Variant> all_variants() { return kVariants; }

std::string variant_list() {
  std::string out;
  for (auto v : kVariants) {
    if (!out.empty()) out += ", ";
    out += variant_name(v);
  }
  return out;
}

Variant parse_variant(std::string_view name) {
  for (auto v : kVariants) {
    if (variant_name(v) == name) return v;
  }
  throw InvalidArgument("unknown variant '" + std::string(name) +
                        "'; expected one of: " + variant_list());
}

void SolverConfig::validate() const {
  if (!(tau0 > 0.0 && tau0 <= 1.0)) {
    throw InvalidArgument("tau0 must lie in (0, 1]");
  }
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0, 1)");
  if (!(eps_subg > 0.0) || !(eps_func > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(armijo_alpha > 0.0 && armijo_alpha < 0.5)) {
    throw InvalidArgument("armijo_alpha must lie in (0, 0.5)");
  }
  if (max_backtracks < 0) throw InvalidArgument("max_backtracks must be >= 0");
}

ConcentrationMatrix default_initial(const CovarianceMatrix& s) {
  s.require_positive_diagonal();
  return ConcentrationMatrix::diagonal(
      s.values().diagonal().cwiseSqrt().cwiseInverse());
}

namespace detail {

ConcentrationMatrix prepare(const CovarianceMatrix& s,
                            const PenaltyMatrix& lambda,
                            const SolverConfig& config) {
  config.validate();
  require_same_dim(s.dim(), lambda.dim(), "S vs Lambda");
  s.require_positive_diagonal();
  if (!config.initial) return default_initial(s);
  const auto& start = *config.initial;
  require_same_dim(s.dim(), start.dim(), "S vs initial Omega");
  if (!start.has_positive_diagonal()) {
    throw InvalidArgument("initial Omega must have a positive diagonal");
  }
  return start;
}

IterationRecord make_record(int iter, double objective, double delta_subg,
                            double delta_func, double tau, int backtracks,
                            const ConcentrationMatrix& omega,
                            const Stopwatch& clock) {
  IterationRecord r;
  r.iter = iter;
  r.objective = objective;
  r.delta_subg = delta_subg;
  r.delta_func = delta_func;
  r.step_size = tau;
  r.backtracks = backtracks;
  r.nnz = omega.nnz();
  r.elapsed_ms = clock.elapsed_ms();
  r.diag_min = omega.min_diag();
  r.diag_max = omega.max_diag();
  return r;
}

ConcentrationMatrix extrapolate(const ConcentrationMatrix& a,
                                const ConcentrationMatrix& b, double beta) {
  Vector diag = a.diag() + beta * (a.diag() - b.diag());
  std::vector<OffDiagEntry> upper;
  upper.reserve(std::max(a.offdiag_pairs(), b.offdiag_pairs()));
  // Walk the union; values of a are recovered from the difference.
  for_each_difference(a, b, [&](Index i, Index j, double diff) {
    if (i == j) return;
    const double va = a(i, j);
    upper.push_back({i, j, va + beta * diff});
  });
  return ConcentrationMatrix(std::move(diag), std::move(upper));
}

Matrix dense_difference(const ConcentrationMatrix& a,
                        const ConcentrationMatrix& b) {
  Matrix d = Matrix::Zero(a.dim(), a.dim());
  for_each_difference(a, b, [&](Index i, Index j, double v) {
    d(i, j) = v;
    d(j, i) = v;
  });
  return d;
}

double smooth_linearization_gap(const ConcentrationMatrix& theta,
                                const Matrix& w_theta,
                                const ConcentrationMatrix& cand,
                                const Matrix& w_cand, double* diff_sq_norm) {
  double barrier = 0.0;
  double curvature = 0.0;
  double sq = 0.0;
  for_each_difference(cand, theta, [&](Index i, Index j, double d) {
    if (i == j) {
      barrier += log_barrier_excess(d / theta.diag()(i));
      curvature += d * (w_cand(i, i) - w_theta(i, i));
      sq += d * d;
    } else {
      curvature += d * ((w_cand(i, j) - w_theta(i, j)) +
                        (w_cand(j, i) - w_theta(j, i)));
      sq += 2.0 * d * d;
    }
  });
  if (diff_sq_norm != nullptr) *diff_sq_norm = sq;
  return barrier + 0.5 * curvature;
}

}  // namespace detail
}  // namespace concord
