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

#include "concord/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "concord/certificates.hpp"
#include "concord/error.hpp"
#include "concord/random.hpp"

namespace concord {

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("below(0) is empty");
  const std::uint64_t limit = engine_.max() - engine_.max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, r;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    r = u * u + v * v;
  } while (r >= 1.0 || r == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(r) / r);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

void SynthSpec::validate() const {
  if (p < 1) throw InvalidArgument("p must be >= 1");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const auto capacity = static_cast<std::size_t>(p) * (p - 1) / 2;
  if (pairs > capacity) {
    throw InvalidArgument("requested " + std::to_string(pairs) +
                          " pairs but p = " + std::to_string(p) +
                          " has only " + std::to_string(capacity));
  }
  if (!(min_magnitude > 0.0) || !(max_magnitude >= min_magnitude)) {
    throw InvalidArgument("magnitude range must satisfy 0 < min <= max");
  }
}

std::size_t default_pairs(Index p) {
  const auto capacity = static_cast<std::size_t>(p) * (p - 1) / 2;
  return std::min<std::size_t>(5 * static_cast<std::size_t>(p - 1), capacity);
}

ConcentrationMatrix generate_sparse_concentration(const SynthSpec& spec) {
  spec.validate();
  const Index p = spec.p;
  const std::uint64_t capacity = static_cast<std::uint64_t>(p) * (p - 1) / 2;

  // Floyd's sampling: a uniform k-subset of [0, capacity).
  RandomStream pattern(spec.seed, RandomStream::kPattern);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = capacity - spec.pairs; j < capacity; ++j) {
    const std::uint64_t t = pattern.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }

  // Row-major upper-triangle slot -> (row, col).
  std::vector<std::uint64_t> row_start(static_cast<std::size_t>(p) + 1, 0);
  for (Index i = 0; i < p; ++i) {
    row_start[i + 1] = row_start[i] + static_cast<std::uint64_t>(p - 1 - i);
  }

  RandomStream values(spec.seed, RandomStream::kValues);
  std::vector<OffDiagEntry> upper;
  upper.reserve(spec.pairs);
  Vector diag = Vector::Ones(p);
  for (const std::uint64_t slot : chosen) {
    const auto it = std::upper_bound(row_start.begin(), row_start.end(), slot);
    const Index row = static_cast<Index>(it - row_start.begin()) - 1;
    const Index col = row + 1 + static_cast<Index>(slot - row_start[row]);
    const double magnitude =
        values.uniform(spec.min_magnitude, spec.max_magnitude);
    const double value = values.uniform() < 0.5 ? -magnitude : magnitude;
    upper.push_back({row, col, value});
    diag(row) += magnitude;
    diag(col) += magnitude;
  }
  return ConcentrationMatrix(std::move(diag), std::move(upper));
}

DataMatrix sample_gaussian(const ConcentrationMatrix& truth, Index n,
                           std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const Index p = truth.dim();
  const Eigen::LLT<Matrix> llt(truth.to_dense());
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("truth is not positive definite (Cholesky failed)");
  }
  RandomStream rng(seed, RandomStream::kSamples);
  Matrix z(p, n);  // column r is observation r
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < p; ++c) z(c, r) = rng.normal();
  }
  // truth = L L^T, so x = L^{-T} z has covariance truth^{-1}.
  llt.matrixU().solveInPlace(z);
  return DataMatrix(z.transpose(), false);
}

std::vector<double> lambda_grid(const CovarianceMatrix& s, int count) {
  if (count < 2) throw InvalidArgument("lambda grid needs count >= 2");
  const double top = lambda_max(s);
  if (!(top > 0.0)) {
    throw InvalidArgument("nothing to regularize: lambda_max is 0");
  }
  const double hi = 1.05 * top;
  const double lo = 0.05 * top;
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double ratio = std::log(lo / hi);
  for (int k = 0; k < count; ++k) {
    grid[k] = hi * std::exp(ratio * k / (count - 1));
  }
  grid.front() = hi;
  grid.back() = lo;
  return grid;
}

}  // namespace concord
