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

#include "gtrisk/exact.h"

#include <algorithm>
#include <string>
#include <vector>

#include "gtrisk/numeric.h"

namespace gtrisk {
namespace {

void require_positive_n(std::int64_t n) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
}

// Positive entries in ascending order. Summing over a canonical order makes
// the results exactly invariant under permutation and zero padding.
std::vector<double> sorted_support(const Distribution& dist) {
  std::vector<double> p;
  p.reserve(dist.size());
  for (double v : dist.probs()) {
    if (v > 0.0) p.push_back(v);
  }
  std::sort(p.begin(), p.end());
  return p;
}

// sum_s p_s^power (1 - p_s)^exponent
double single_sum(const std::vector<double>& p, int power,
                  std::int64_t exponent) {
  CompensatedSum acc;
  for (double v : p) {
    const double lead = power == 1 ? v : v * v;
    acc.add(lead * one_minus_pow(v, exponent));
  }
  return acc.value();
}

// sum over ordered pairs s != s' of p_s p_s' (1 - p_s - p_s')^exponent
double pair_sum(const std::vector<double>& p, std::int64_t exponent) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      acc.add(p[i] * p[j] * one_minus_pow(p[i] + p[j], exponent));
    }
  }
  return 2.0 * acc.value();
}

}  // namespace

MseReport exact_mse(const Distribution& dist, std::int64_t n) {
  require_positive_n(n);
  const auto p = sorted_support(dist);
  const double nd = static_cast<double>(n);

  MseReport r;
  // E[M_hat^2] = n^-2 (E[N_1] + E[N_1 (N_1 - 1)])
  r.e_gt_sq = single_sum(p, 1, n - 1) / nd;
  if (n >= 2) r.e_gt_sq += (nd - 1.0) / nd * pair_sum(p, n - 2);
  r.e_cross = pair_sum(p, n - 1);
  r.e_mm_sq = single_sum(p, 2, n) + pair_sum(p, n);
  r.mse = std::max(0.0, r.e_gt_sq - 2.0 * r.e_cross + r.e_mm_sq);
  return r;
}

double brute_force_mse(const Distribution& dist, std::int64_t n) {
  require_positive_n(n);
  const auto m = static_cast<std::int64_t>(dist.size());
  std::int64_t sequences = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (sequences > kOracleMaxSequences / m) {
      throw ComputationError("instance too large for oracle: m^n = " +
                             std::to_string(m) + "^" + std::to_string(n) +
                             " exceeds " + std::to_string(kOracleMaxSequences));
    }
    sequences *= m;
  }

  // Odometer over sequences x_1..x_n in {0..m-1}^n.
  std::vector<std::int64_t> digits(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
  counts[0] = n;
  CompensatedSum total;
  for (std::int64_t seq = 0; seq < sequences; ++seq) {
    double prob = 1.0;
    for (std::int64_t x : digits) prob *= dist[static_cast<std::size_t>(x)];
    if (prob > 0.0) {
      std::int64_t singletons = 0;
      double unseen = 0.0;
      for (std::int64_t s = 0; s < m; ++s) {
        if (counts[s] == 1) ++singletons;
        if (counts[s] == 0) unseen += dist[static_cast<std::size_t>(s)];
      }
      const double err = static_cast<double>(singletons) / n - unseen;
      total.add(prob * err * err);
    }
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      --counts[digits[pos]];
      if (++digits[pos] < m) {
        ++counts[digits[pos]];
        break;
      }
      digits[pos] = 0;
      ++counts[0];
    }
  }
  return total.value();
}

double mse_occupancy_exact(const Distribution& dist, std::int64_t n) {
  if (n < 2) throw ValidationError("occupancy expression needs n >= 2");
  const auto p = sorted_support(dist);
  const double nd = static_cast<double>(n);

  const double e_n1 = nd * single_sum(p, 1, n - 1);
  const double e_n2 = nd * (nd - 1.0) / 2.0 * single_sum(p, 2, n - 2);
  const double e_n1_sq = e_n1 + nd * (nd - 1.0) * pair_sum(p, n - 2);
  return (2.0 * e_n2 / nd + e_n1 / nd - e_n1_sq / (nd * nd)) / nd;
}

}  // namespace gtrisk
