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

#ifndef GTRISK_CORE_H_
#define GTRISK_CORE_H_

// Domain types for missing-mass estimation: a probability vector over an
// index-based alphabet, the frequency counts of a sample drawn from it, and
// the occupancy profile (how many symbols were seen exactly k times).
//
// Every type validates on construction and is immutable afterwards.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtrisk {

// Raised for malformed user input: bad weights, out-of-range parameters,
// mismatched lengths. Callers at the CLI boundary map this to a usage error.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a well-formed request cannot be computed (size guards,
// internal consistency checks).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Absolute tolerance on |sum(p) - 1| accepted by Distribution validation.
inline constexpr double kNormalizationTolerance = 1e-9;

class Distribution {
 public:
  // Validates `probs` (finite, non-negative, sums to 1 within
  // kNormalizationTolerance) and renormalizes to remove the residual drift.
  static Distribution from_probabilities(std::vector<double> probs);

  // m uniform entries of 1/m.
  static Distribution uniform(std::int64_t m);

  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t s) const { return probs_[s]; }
  // Alphabet size m; zero-probability entries count.
  std::size_t size() const { return probs_.size(); }
  std::size_t support_size() const;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  friend Distribution dirac_uniform(std::int64_t, double);

  std::vector<double> probs_;
};

class Sample {
 public:
  // n is the sum of `counts`; it must be positive.
  explicit Sample(std::vector<std::int64_t> counts);
  // Same, but additionally checks that the counts sum to `n`.
  Sample(std::vector<std::int64_t> counts, std::int64_t n);

  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t n() const { return n_; }
  std::size_t size() const { return counts_.size(); }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

class OccupancyProfile {
 public:
  // `by_multiplicity` maps k >= 1 to N_k; zero entries are dropped.
  // Checks sum_k k * N_k == n.
  OccupancyProfile(std::map<std::int64_t, std::int64_t> by_multiplicity,
                   std::int64_t n);

  // N_k, zero when no symbol occurs exactly k times.
  std::int64_t count(std::int64_t k) const;
  const std::map<std::int64_t, std::int64_t>& entries() const {
    return entries_;
  }
  std::int64_t n() const { return n_; }

 private:
  std::map<std::int64_t, std::int64_t> entries_;
  std::int64_t n_;
};

// Normalizes non-negative weights to a Distribution. Errors name the
// offending index.
Distribution build_distribution(std::span<const double> weights);

// `m_uniform` entries of w / m_uniform followed by a single atom 1 - w.
// The atom is omitted when w == 1.
Distribution dirac_uniform(std::int64_t m_uniform, double w);

OccupancyProfile occupancy(const Sample& sample);

// Good-Turing estimate of the missing mass, N_1 / n.
double good_turing(const Sample& sample);

// Total probability of the symbols with zero count.
double missing_mass(const Distribution& dist, const Sample& sample);

}  // namespace gtrisk

#endif  // GTRISK_CORE_H_
