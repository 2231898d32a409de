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

#ifndef GTRISK_MINIMAX_H_
#define GTRISK_MINIMAX_H_

// Worst-case MSE of the Good-Turing estimator over all distributions with
// at most m symbols, at sample size n.
//
// To leading order the maximal MSE is alpha / n, where alpha is the value of
//
//   max  alpha(w, c) = w (1 + c) e^{-c} - (w e^{-c})^2
//   s.t. 0 <= w <= 1,  w <= (m / n) c.
//
// The optimum sits on one of two boundaries. For m / n >= 1 / W(2) the mass
// constraint w = 1 is active and c = W(2), giving the plateau value
// (W(2)^2 + 2 W(2)) / 4 ~= 0.608. Below the transition the alphabet
// constraint w = (m / n) c is active and c solves a one-dimensional problem
// on [0, n / m]. The maximizing distribution puts weight w uniformly on
// max(floor(w n / c - 1), 1) symbols and 1 - w on a single atom.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gtrisk/core.h"

namespace gtrisk {

// Principal branch W_0 of the Lambert W function: the solution W >= -1 of
// W e^W = x. Throws std::domain_error for x < -1/e.
double lambert_w0(double x);

double objective_alpha(double w, double c);

// Alphabet size bound: a finite m or "no constraint".
class AlphabetSize {
 public:
  static AlphabetSize finite(std::int64_t m) { return AlphabetSize(m); }
  static AlphabetSize infinite() { return AlphabetSize(std::nullopt); }

  bool is_infinite() const { return !m_.has_value(); }
  // Precondition: !is_infinite().
  std::int64_t value() const { return *m_; }

 private:
  explicit AlphabetSize(std::optional<std::int64_t> m) : m_(m) {}
  std::optional<std::int64_t> m_;
};

enum class Regime { kPlateau, kConstrained };

std::string_view regime_name(Regime regime);

struct WorstCaseSolution {
  double alpha = 0.0;
  double w = 0.0;
  double c = 0.0;
  Regime regime = Regime::kPlateau;
  // Number of symbols in the uniform part of the maximizer.
  std::int64_t uniform_support = 1;
  // alpha / n, the leading term of the worst-case MSE.
  double mse_leading = 0.0;

  double atom_weight() const { return 1.0 - w; }
  std::int64_t total_support() const {
    return uniform_support + (w < 1.0 ? 1 : 0);
  }
};

// W(2), the maximizing c on the plateau.
double plateau_c();
// (W(2)^2 + 2 W(2)) / 4.
double plateau_alpha();
// 1 / W(2): the ratio m / n at which the maximizer switches regime.
double transition_ratio();

// Requires n >= 2 and, for finite m, m >= 2.
WorstCaseSolution solve_worst_case(AlphabetSize m, std::int64_t n);

// The Dirac-uniform mixture built from solve_worst_case. Throws
// ComputationError if its support would exceed m.
Distribution worst_case_distribution(AlphabetSize m, std::int64_t n);

struct PhasePoint {
  double b = 0.0;      // m / n
  double alpha = 0.0;  // leading constant at that ratio
};

// alpha as a function of b = m / n, with m = round(b * n_ref). Output order
// matches `ratios`.
std::vector<PhasePoint> phase_curve(std::span<const double> ratios,
                                    std::int64_t n_ref);

// g(u) = (u^2 + b u) e^{-u}
double exp_quad(double u, double b);

// Positive stationary points of g: (2 - b +- sqrt(b^2 + 4)) / 2, both when
// b < 0 and only the "+" root otherwise. Ascending order.
std::vector<double> exp_quad_extremes(double b);

// Positive inflection points of g: (4 - b +- sqrt(b^2 + 8)) / 2, both when
// b < 1 and only the "+" root otherwise. Ascending order.
std::vector<double> exp_quad_inflections(double b);

// Maximizer a / (a + b) of x^a (1 - x)^b on [0, 1].
double beta_mode(double a, double b);

}  // namespace gtrisk

#endif  // GTRISK_MINIMAX_H_
