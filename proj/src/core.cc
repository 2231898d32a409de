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

#include "gtrisk/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtrisk/numeric.h"

namespace gtrisk {
namespace {

std::string at_index(std::size_t i) { return " at index " + std::to_string(i); }

// Returns the sum of the entries after checking each is finite and >= 0.
double checked_total(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw ValidationError(std::string(what) + " vector is empty");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw ValidationError(std::string("non-finite ") + what + at_index(i));
    }
    if (v < 0.0) {
      throw ValidationError(std::string("negative ") + what + at_index(i));
    }
    total.add(v);
  }
  return total.value();
}

}  // namespace

Distribution Distribution::from_probabilities(std::vector<double> probs) {
  const double total = checked_total(probs, "probability");
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw ValidationError("probabilities sum to " + std::to_string(total) +
                          ", not 1");
  }
  for (double& p : probs) p /= total;
  return Distribution(std::move(probs));
}

Distribution Distribution::uniform(std::int64_t m) {
  if (m < 1) throw ValidationError("uniform alphabet size must be >= 1");
  return Distribution(
      std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
}

std::size_t Distribution::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0; }));
}

Sample::Sample(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw ValidationError("sample has no symbols");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) throw ValidationError("negative count" + at_index(i));
    n_ += counts_[i];
  }
  if (n_ <= 0) throw ValidationError("sample size must be positive");
}

Sample::Sample(std::vector<std::int64_t> counts, std::int64_t n)
    : Sample(std::move(counts)) {
  if (n_ != n) {
    throw ValidationError("counts sum to " + std::to_string(n_) +
                          " but n = " + std::to_string(n));
  }
}

OccupancyProfile::OccupancyProfile(
    std::map<std::int64_t, std::int64_t> by_multiplicity, std::int64_t n)
    : n_(n) {
  std::int64_t weighted = 0;
  for (const auto& [k, count] : by_multiplicity) {
    if (k < 0 || count < 0) {
      throw ValidationError("occupancy entries must be non-negative");
    }
    if (k == 0 || count == 0) continue;
    entries_.emplace(k, count);
    weighted += k * count;
  }
  if (weighted != n_) {
    throw ValidationError("occupancy numbers do not add up to n");
  }
}

std::int64_t OccupancyProfile::count(std::int64_t k) const {
  const auto it = entries_.find(k);
  return it == entries_.end() ? 0 : it->second;
}

Distribution build_distribution(std::span<const double> weights) {
  const double total = checked_total(weights, "weight");
  if (total <= 0.0) throw ValidationError("weights are all-zero");
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& p : probs) p /= total;
  return Distribution::from_probabilities(std::move(probs));
}

Distribution dirac_uniform(std::int64_t m_uniform, double w) {
  if (m_uniform < 1) throw ValidationError("uniform part needs >= 1 element");
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ValidationError("mixture weight w must lie in [0, 1]");
  }
  std::vector<double> probs(static_cast<std::size_t>(m_uniform),
                            w / static_cast<double>(m_uniform));
  if (w < 1.0) probs.push_back(1.0 - w);
  return Distribution(std::move(probs));
}

OccupancyProfile occupancy(const Sample& sample) {
  std::map<std::int64_t, std::int64_t> by_multiplicity;
  for (std::int64_t f : sample.counts()) {
    if (f > 0) ++by_multiplicity[f];
  }
  return OccupancyProfile(std::move(by_multiplicity), sample.n());
}

double good_turing(const Sample& sample) {
  const auto singletons = std::count(sample.counts().begin(),
                                     sample.counts().end(), std::int64_t{1});
  return static_cast<double>(singletons) / static_cast<double>(sample.n());
}

double missing_mass(const Distribution& dist, const Sample& sample) {
  if (dist.size() != sample.size()) {
    throw ValidationError("distribution has " + std::to_string(dist.size()) +
                          " symbols but sample has " +
                          std::to_string(sample.size()));
  }
  CompensatedSum unseen;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (sample.counts()[s] == 0) unseen.add(dist[s]);
  }
  return unseen.value();
}

}  // namespace gtrisk
