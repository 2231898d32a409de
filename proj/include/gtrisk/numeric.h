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

#ifndef GTRISK_NUMERIC_H_
#define GTRISK_NUMERIC_H_

#include <cstdint>

namespace gtrisk {

// Neumaier-compensated running sum. The result depends only on the order of
// add() calls, so a fixed iteration order gives bit-stable totals.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Values of x at or above this are treated as 1 by one_minus_pow.
inline constexpr double kUnitThreshold = 1.0 - 1e-15;

// (1 - x)^k for x in [0, 1] and k >= 0, computed as exp(k * log1p(-x)).
// Returns 1 for k == 0 (including x == 1) and exactly 0 when x >= 1 - 1e-15.
double one_minus_pow(double x, std::int64_t k);

}  // namespace gtrisk

#endif  // GTRISK_NUMERIC_H_
