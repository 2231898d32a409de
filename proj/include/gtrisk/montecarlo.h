// Copyright 2026 The gt-risk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GTRISK_MONTECARLO_H_
#define GTRISK_MONTECARLO_H_

// Seeded simulation of the sampling experiment.
//
// Randomness comes from SplitMix64 (Steele, Lea and Flood, 2014): a 64-bit
// state advanced by the golden-ratio increment 0x9e3779b97f4a7c15 and passed
// through a fixed avalanche finalizer. Trial i of a run with seed s uses its
// own stream derive_stream(s, i), so results do not depend on how trials are
// scheduled across threads.

#include <cstdint>
#include <limits>
#include <vector>

#include "gtrisk/core.h"

namespace gtrisk {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();
  // Uniform double in [0, 1) from the top 53 bits.
  double next_unit();

 private:
  std::uint64_t state_;
};

// Independent substream for work item `index` of a run seeded with `seed`.
SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index);

// Inverse-CDF categorical sampler over a precomputed cumulative vector.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const Distribution& dist);

  std::size_t draw(SplitMix64& stream) const;
  // Fills `counts` (resized to m) with multinomial(n, dist) counts.
  void sample_counts(std::int64_t n, SplitMix64& stream,
                     std::vector<std::int64_t>& counts) const;

 private:
  std::vector<double> cumulative_;
};

Sample sample_once(const Distribution& dist, std::int64_t n,
                   SplitMix64& stream);

struct McResult {
  double mse_estimate = 0.0;
  // Sample standard deviation of the squared errors over sqrt(trials).
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  // 0 selects resolve_thread_count(0).
  unsigned threads = 0;
};

// Worker count for a request of `requested` threads: the request itself when
// positive, otherwise the hardware concurrency. Either way capped by the
// GT_RISK_THREADS environment variable when it holds a positive integer.
unsigned resolve_thread_count(unsigned requested);

// Averages (good_turing - missing_mass)^2 over `trials` >= 2 independent
// samples. Bit-identical for equal inputs regardless of thread count.
McResult monte_carlo_mse(const Distribution& dist, std::int64_t n,
                         std::int64_t trials, std::uint64_t seed,
                         McOptions options = {});

}  // namespace gtrisk

#endif  // GTRISK_MONTECARLO_H_
