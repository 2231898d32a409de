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

#include "gtrisk/minimax.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gtrisk {
namespace {

constexpr int kLambertMaxIterations = 50;
constexpr int kScanIntervals = 10'000;
constexpr double kGoldenTolerance = 1e-10;

// Objective restricted to the boundary w = b c.
double constrained_objective(double c, double b) {
  return objective_alpha(b * c, c);
}

double constrained_derivative(double c, double b) {
  const double decay = std::exp(-c);
  return b * decay * (1.0 + c - c * c) -
         2.0 * b * b * c * (1.0 - c) * decay * decay;
}

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
double golden_section_max(F f, double lo, double hi) {
  const double inv_phi = 1.0 / std::numbers::phi;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

// Golden section only locates a flat maximum to ~sqrt(epsilon) in c; finish
// by bisecting the sign change of the analytic derivative near `c`.
double polish_stationary_point(double c, double b, double lo, double hi) {
  double left = std::max(lo, c - 1e-6);
  double right = std::min(hi, c + 1e-6);
  if (!(constrained_derivative(left, b) > 0.0 &&
        constrained_derivative(right, b) < 0.0)) {
    return c;
  }
  for (int i = 0; i < 200 && right - left > 1e-15; ++i) {
    const double mid = 0.5 * (left + right);
    (constrained_derivative(mid, b) > 0.0 ? left : right) = mid;
  }
  return 0.5 * (left + right);
}

// Snaps values within 1e-9 relative of an integer before flooring, so that
// w n / c == m computed in floating point does not lose a symbol.
std::int64_t uniform_support_size(double w, double c, std::int64_t n) {
  double m1 = w * static_cast<double>(n) / c;
  const double nearest = std::round(m1);
  if (std::abs(m1 - nearest) <= 1e-9 * std::max(1.0, m1)) m1 = nearest;
  return std::max<std::int64_t>(static_cast<std::int64_t>(std::floor(m1 - 1.0)),
                                1);
}

std::vector<double> positive_sorted(std::vector<double> roots) {
  std::erase_if(roots, [](double u) { return !(u > 0.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

double lambert_w0(double x) {
  constexpr double kBranchPoint = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < kBranchPoint) {
    throw std::domain_error("lambert_w0 requires x >= -1/e, got " +
                            std::to_string(x));
  }
  if (x == kBranchPoint) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < -0.25) {
    // Branch-point series in p = sqrt(2 (e x + 1)).
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  } else {
    w = std::log1p(x);
  }

  // Halley iteration on f(w) = w e^w - x.
  for (int i = 0; i < kLambertMaxIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-15 * std::abs(x)) break;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    if (!std::isfinite(step)) break;
    w -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() *
                              (1.0 + std::abs(w))) {
      break;
    }
  }
  return std::max(w, -1.0);
}

double objective_alpha(double w, double c) {
  const double decay = std::exp(-c);
  const double atom = w * decay;
  return w * (1.0 + c) * decay - atom * atom;
}

std::string_view regime_name(Regime regime) {
  return regime == Regime::kPlateau ? "plateau" : "constrained";
}

double plateau_c() {
  static const double c = lambert_w0(2.0);
  return c;
}

double plateau_alpha() {
  static const double alpha = objective_alpha(1.0, plateau_c());
  return alpha;
}

double transition_ratio() {
  static const double ratio = 1.0 / plateau_c();
  return ratio;
}

WorstCaseSolution solve_worst_case(AlphabetSize m, std::int64_t n) {
  if (n < 2) throw ValidationError("worst case needs sample size n >= 2");
  if (!m.is_infinite() && m.value() < 2) {
    throw ValidationError("worst case needs alphabet size m >= 2");
  }

  WorstCaseSolution sol;
  const double b = m.is_infinite()
                       ? std::numeric_limits<double>::infinity()
                       : static_cast<double>(m.value()) / static_cast<double>(n);
  if (b >= transition_ratio()) {
    sol.regime = Regime::kPlateau;
    sol.w = 1.0;
    sol.c = plateau_c();
    sol.alpha = plateau_alpha();
  } else {
    sol.regime = Regime::kConstrained;
    const double c_max = 1.0 / b;
    auto objective = [b](double c) { return constrained_objective(c, b); };

    // Boundary c = n / m, where the mass constraint w <= 1 also binds.
    double best_c = c_max;
    double best = objective(c_max);
    bool at_boundary = true;

    // The objective can have several stationary points; bracket every
    // + to - sign change of the derivative and refine each.
    const double h = c_max / kScanIntervals;
    double left_slope = constrained_derivative(0.0, b);
    for (int i = 0; i < kScanIntervals; ++i) {
      const double lo = i * h;
      const double hi = i + 1 == kScanIntervals ? c_max : (i + 1) * h;
      const double right_slope = constrained_derivative(hi, b);
      if (left_slope > 0.0 && right_slope <= 0.0) {
        const double bracket_lo = std::max(0.0, lo - h);
        const double bracket_hi = std::min(c_max, hi + h);
        const double c = polish_stationary_point(
            golden_section_max(objective, bracket_lo, bracket_hi), b,
            bracket_lo, bracket_hi);
        const double value = objective(c);
        if (value > best) {
          best = value;
          best_c = c;
          at_boundary = false;
        }
      }
      left_slope = right_slope;
    }
    sol.c = best_c;
    sol.w = at_boundary ? 1.0 : std::min(1.0, b * best_c);
    sol.alpha = best;
  }
  sol.uniform_support = uniform_support_size(sol.w, sol.c, n);
  sol.mse_leading = sol.alpha / static_cast<double>(n);
  return sol;
}

Distribution worst_case_distribution(AlphabetSize m, std::int64_t n) {
  const WorstCaseSolution sol = solve_worst_case(m, n);
  if (!m.is_infinite() && sol.total_support() > m.value()) {
    throw ComputationError(
        "extremal distribution needs " + std::to_string(sol.total_support()) +
        " symbols but the alphabet has " + std::to_string(m.value()));
  }
  return dirac_uniform(sol.uniform_support, sol.w);
}

std::vector<PhasePoint> phase_curve(std::span<const double> ratios,
                                    std::int64_t n_ref) {
  if (n_ref < 2) throw ValidationError("phase curve needs n_ref >= 2");
  std::vector<PhasePoint> points;
  points.reserve(ratios.size());
  for (double b : ratios) {
    if (!std::isfinite(b) || b <= 0.0) {
      throw ValidationError("ratio m/n must be positive and finite, got " +
                            std::to_string(b));
    }
    const auto m = std::llround(b * static_cast<double>(n_ref));
    if (m < 2) {
      throw ValidationError("ratio " + std::to_string(b) +
                            " gives fewer than 2 symbols at n_ref = " +
                            std::to_string(n_ref));
    }
    points.push_back({b, solve_worst_case(AlphabetSize::finite(m), n_ref).alpha});
  }
  return points;
}

double exp_quad(double u, double b) { return (u * u + b * u) * std::exp(-u); }

std::vector<double> exp_quad_extremes(double b) {
  const double root = std::sqrt(b * b + 4.0);
  if (b < 0.0) return positive_sorted({(2.0 - b - root) / 2.0, (2.0 - b + root) / 2.0});
  return positive_sorted({(2.0 - b + root) / 2.0});
}

std::vector<double> exp_quad_inflections(double b) {
  const double root = std::sqrt(b * b + 8.0);
  if (b < 1.0) return positive_sorted({(4.0 - b - root) / 2.0, (4.0 - b + root) / 2.0});
  return positive_sorted({(4.0 - b + root) / 2.0});
}

double beta_mode(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("beta mode needs positive finite exponents");
  }
  return a / (a + b);
}

}  // namespace gtrisk
