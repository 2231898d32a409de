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

#ifndef GTRISK_APPROX_H_
#define GTRISK_APPROX_H_

// Asymptotic MSE formulas for the Good-Turing estimator. Both drop an
// O(1/n^2) remainder and are meant for n >> 1; they accept any n >= 2 but
// are inaccurate for small samples.

#include <cstdint>

#include "gtrisk/core.h"

namespace gtrisk {

// Exact binomial first moments of the occupancy numbers:
//   E[N_1] = n sum_s p_s (1 - p_s)^(n-1)
//   E[N_2] = C(n, 2) sum_s p_s^2 (1 - p_s)^(n-2)
// k must be 1 or 2; k == 2 needs n >= 2.
double expected_occupancy(const Distribution& dist, std::int64_t n, int k);

// (2 E[N_2] / n + (E[N_1] / n)(1 - E[N_1] / n)) / n.
double mse_first_moment(const Distribution& dist, std::int64_t n);

// Poissonized form, with (1 - p)^n replaced by exp(-n p):
//   (n sum p^2 e^{-np} + sum p e^{-np} - (sum p e^{-np})^2) / n.
double mse_poissonized(const Distribution& dist, std::int64_t n);

}  // namespace gtrisk

#endif  // GTRISK_APPROX_H_
