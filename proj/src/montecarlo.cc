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

#include "gtrisk/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string_view>
#include <thread>

#include "gtrisk/numeric.h"

namespace gtrisk {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
// Trials per reduction block. Fixed so that the reduction tree does not
// depend on the thread count.
constexpr std::int64_t kBlockTrials = 4096;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Count, mean and sum of squared deviations of one block, merged in block
// order with Chan's pairwise update.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const auto total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count = total;
  }
};

double squared_error(const Distribution& dist,
                     const std::vector<std::int64_t>& counts, std::int64_t n) {
  std::int64_t singletons = 0;
  CompensatedSum unseen;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] == 1) ++singletons;
    if (counts[s] == 0) unseen.add(dist[s]);
  }
  const double err =
      static_cast<double>(singletons) / static_cast<double>(n) - unseen.value();
  return err * err;
}

Moments run_block(const Distribution& dist, const CategoricalSampler& sampler,
                  std::int64_t n, std::uint64_t seed, std::int64_t first,
                  std::int64_t last, std::vector<std::int64_t>& counts) {
  std::vector<double> errors;
  errors.reserve(static_cast<std::size_t>(last - first));
  for (std::int64_t t = first; t < last; ++t) {
    SplitMix64 stream = derive_stream(seed, static_cast<std::uint64_t>(t));
    sampler.sample_counts(n, stream, counts);
    errors.push_back(squared_error(dist, counts, n));
  }
  Moments block;
  block.count = last - first;
  CompensatedSum total;
  for (double e : errors) total.add(e);
  block.mean = total.value() / static_cast<double>(block.count);
  CompensatedSum deviations;
  for (double e : errors) {
    const double d = e - block.mean;
    deviations.add(d * d);
  }
  block.m2 = deviations.value();
  return block;
}

}  // namespace

SplitMix64::result_type SplitMix64::operator()() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed) ^ mix64(index * kGoldenGamma + 1));
}

CategoricalSampler::CategoricalSampler(const Distribution& dist) {
  cumulative_.reserve(dist.size());
  CompensatedSum running;
  for (double p : dist.probs()) {
    running.add(p);
    cumulative_.push_back(running.value());
  }
  // Pin the top of the CDF at 1 from the last positive entry onward so that
  // no draw falls past the end or lands on a trailing zero.
  const auto last_positive = std::find_if(dist.probs().rbegin(),
                                          dist.probs().rend(),
                                          [](double p) { return p > 0.0; });
  const auto pin = static_cast<std::size_t>(
      std::distance(last_positive, dist.probs().rend()) - 1);
  std::fill(cumulative_.begin() + static_cast<std::ptrdiff_t>(pin),
            cumulative_.end(), 1.0);
}

std::size_t CategoricalSampler::draw(SplitMix64& stream) const {
  const double u = stream.next_unit();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

void CategoricalSampler::sample_counts(std::int64_t n, SplitMix64& stream,
                                       std::vector<std::int64_t>& counts) const {
  counts.assign(cumulative_.size(), 0);
  for (std::int64_t i = 0; i < n; ++i) ++counts[draw(stream)];
}

Sample sample_once(const Distribution& dist, std::int64_t n,
                   SplitMix64& stream) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
  std::vector<std::int64_t> counts;
  CategoricalSampler(dist).sample_counts(n, stream, counts);
  return Sample(std::move(counts), n);
}

unsigned resolve_thread_count(unsigned requested) {
  unsigned threads = requested > 0 ? requested
                                   : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("GT_RISK_THREADS")) {
    unsigned value = 0;
    const std::string_view text(cap);
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
      threads = std::min(threads, value);
    }
  }
  return threads;
}

McResult monte_carlo_mse(const Distribution& dist, std::int64_t n,
                         std::int64_t trials, std::uint64_t seed,
                         McOptions options) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
  if (trials < 2) throw ValidationError("monte carlo needs trials >= 2");

  const CategoricalSampler sampler(dist);
  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<Moments> partial(static_cast<std::size_t>(blocks));

  std::atomic<std::int64_t> next_block{0};
  auto worker = [&] {
    std::vector<std::int64_t> counts;
    for (std::int64_t blk = next_block++; blk < blocks; blk = next_block++) {
      const std::int64_t first = blk * kBlockTrials;
      const std::int64_t last = std::min(trials, first + kBlockTrials);
      partial[static_cast<std::size_t>(blk)] =
          run_block(dist, sampler, n, seed, first, last, counts);
    }
  };

  const unsigned threads = std::min<std::int64_t>(
      resolve_thread_count(options.threads), blocks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  Moments total;
  for (const Moments& block : partial) total.merge(block);

  McResult result;
  result.trials = trials;
  result.seed = seed;
  result.mse_estimate = std::clamp(total.mean, 0.0, 1.0);
  const double variance =
      std::max(0.0, total.m2 / static_cast<double>(trials - 1));
  result.std_error = std::sqrt(variance / static_cast<double>(trials));
  return result;
}

}  // namespace gtrisk
