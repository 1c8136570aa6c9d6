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

#include <cstdint>
#include <random>

namespace concord {

// Seedable random source with independent named streams.
//
// The engine is std::mt19937_64 seeded through std::seed_seq with the words
// {seed & 0xffffffff, seed >> 32, stream}. Both are fully specified by the
// C++ standard, so a (seed, stream) pair yields the same sequence on every
// platform. Distributions are implemented here because the std::
// distribution algorithms are implementation-defined.
class RandomStream {
 public:
  enum Stream : std::uint32_t {
    kPattern = 1,  // which off-diagonal pairs are nonzero
    kValues = 2,   // magnitudes and signs of those pairs
    kSamples = 3,  // Gaussian observations
  };

  RandomStream(std::uint64_t seed, std::uint32_t stream);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  // Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace concord
