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

#include "gtrisk/approx.h"

#include <cmath>
#include <string>

#include "gtrisk/numeric.h"

namespace gtrisk {

double expected_occupancy(const Distribution& dist, std::int64_t n, int k) {
  if (k != 1 && k != 2) {
    throw ValidationError("occupancy moment order k must be 1 or 2");
  }
  if (n < k) {
    throw ValidationError("expected N_" + std::to_string(k) +
                          " needs n >= " + std::to_string(k));
  }
  const double nd = static_cast<double>(n);
  CompensatedSum acc;
  for (double p : dist.probs()) {
    if (p <= 0.0) continue;
    const double lead = k == 1 ? p : p * p;
    acc.add(lead * one_minus_pow(p, n - k));
  }
  const double scale = k == 1 ? nd : nd * (nd - 1.0) / 2.0;
  return scale * acc.value();
}

double mse_first_moment(const Distribution& dist, std::int64_t n) {
  if (n < 2) throw ValidationError("first-moment MSE needs n >= 2");
  const double nd = static_cast<double>(n);
  const double singletons = expected_occupancy(dist, n, 1) / nd;
  const double doubletons = expected_occupancy(dist, n, 2) / nd;
  return (2.0 * doubletons + singletons * (1.0 - singletons)) / nd;
}

double mse_poissonized(const Distribution& dist, std::int64_t n) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
  const double nd = static_cast<double>(n);
  CompensatedSum quadratic;
  CompensatedSum linear;
  for (double p : dist.probs()) {
    if (p <= 0.0) continue;
    const double decay = std::exp(-nd * p);
    quadratic.add(p * p * decay);
    linear.add(p * decay);
  }
  const double lin = linear.value();
  return (nd * quadratic.value() + lin - lin * lin) / nd;
}

}  // namespace gtrisk
