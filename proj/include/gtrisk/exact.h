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

#ifndef GTRISK_EXACT_H_
#define GTRISK_EXACT_H_

// Exact, non-asymptotic mean-squared error of the Good-Turing estimator.
//
// The closed forms expand E[(M_hat - M_0)^2] into single and pairwise sums
// over the alphabet; each pair (s, s') contributes a term in
// (1 - p_s - p_s')^k. Cost is O(m^2) in the alphabet size, which is fine up
// to m of a few thousand and slow beyond ~1e4.
//
// brute_force_mse is the independent check: it enumerates all m^n sample
// sequences and shares no code with the closed form.

#include <cstdint>

#include "gtrisk/core.h"

namespace gtrisk {

struct MseReport {
  double mse = 0.0;      // e_gt_sq - 2 e_cross + e_mm_sq, clamped at 0
  double e_gt_sq = 0.0;  // E[M_hat^2]
  double e_cross = 0.0;  // E[M_hat M_0]
  double e_mm_sq = 0.0;  // E[M_0^2]
};

// Largest m^n accepted by brute_force_mse.
inline constexpr std::int64_t kOracleMaxSequences = 10'000'000;

MseReport exact_mse(const Distribution& dist, std::int64_t n);

// Throws ComputationError("instance too large for oracle") when m^n exceeds
// kOracleMaxSequences.
double brute_force_mse(const Distribution& dist, std::int64_t n);

// The occupancy-variance expression E[2 N_2 / n + (N_1 / n)(1 - N_1 / n)] / n
// evaluated with exact moments of N_1, N_2 and N_1^2. Requires n >= 2.
double mse_occupancy_exact(const Distribution& dist, std::int64_t n);

}  // namespace gtrisk

#endif  // GTRISK_EXACT_H_
