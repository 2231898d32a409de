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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "dist_spec.h"
#include "gtrisk/approx.h"
#include "gtrisk/core.h"
#include "gtrisk/exact.h"
#include "gtrisk/minimax.h"
#include "gtrisk/montecarlo.h"
#include "json.hpp"

namespace gtrisk::cli {
namespace {

using Json = nlohmann::ordered_json;

// simulate reports the exact MSE only while its O(m^2) pair sum stays
// below this many pairs.
constexpr double kDeskScalePairs = 1e7;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  Table table;
  Json json;
};

// A flat report: one CSV row, one JSON object.
class Record {
 public:
  Record& add(std::string key, Cell value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Output output() const {
    Output out;
    out.json = Json::object();
    std::vector<Cell> row;
    for (const auto& [key, value] : fields_) {
      out.table.columns.push_back(key);
      row.push_back(value);
      out.json[key] = to_json(value);
    }
    out.table.rows.push_back(std::move(row));
    return out;
  }

  static Json to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> Json {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return nullptr;
          } else {
            return v;
          }
        },
        cell);
  }

 private:
  std::vector<std::pair<std::string, Cell>> fields_;
};

std::string render_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else {
          return v;
        }
      },
      cell);
}

void write_csv(const Table& table, std::ostream& out) {
  auto join = [&out](const auto& items, auto render) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out << ',';
      out << render(items[i]);
    }
    out << '\n';
  };
  join(table.columns, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) join(row, render_cell);
}

// Shared flags. Empty optionals mean "not given".
struct Config {
  std::string format = "csv";
  std::string output_path;

  std::optional<std::string> dist;
  std::optional<std::string> dist_file;
  std::optional<std::int64_t> n;
  std::optional<std::string> m;
  bool oracle = false;

  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> step;
  std::optional<std::string> ratios;
  std::int64_t n_ref = 1000;

  std::optional<std::int64_t> trials;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  std::optional<double> a;
  std::optional<double> b;
};

Distribution load_distribution(const Config& cfg) {
  if (cfg.dist.has_value() == cfg.dist_file.has_value()) {
    throw UsageError("give exactly one of --dist or --dist-file");
  }
  return cfg.dist ? parse_dist_spec(*cfg.dist) : read_dist_file(*cfg.dist_file);
}

std::int64_t require_n(const Config& cfg, std::int64_t minimum) {
  if (!cfg.n) throw UsageError("--n is required");
  if (*cfg.n < minimum) {
    throw UsageError("--n must be >= " + std::to_string(minimum));
  }
  return *cfg.n;
}

Cell optional_cell(std::optional<double> v) {
  return v ? Cell(*v) : Cell(std::monostate{});
}

Output cmd_mse(const Config& cfg) {
  const Distribution dist = load_distribution(cfg);
  const std::int64_t n = require_n(cfg, 1);

  const MseReport exact = exact_mse(dist, n);
  std::optional<double> first_moment;
  if (n >= 2) first_moment = mse_first_moment(dist, n);
  const double poissonized = mse_poissonized(dist, n);
  std::optional<double> oracle;
  if (cfg.oracle) oracle = brute_force_mse(dist, n);

  auto gap = [](std::optional<double> x, std::optional<double> y) {
    return x && y ? std::optional<double>(std::abs(*x - *y)) : std::nullopt;
  };
  Record r;
  r.add("n", n)
      .add("m", static_cast<std::int64_t>(dist.size()))
      .add("exact_mse", exact.mse)
      .add("e_gt_sq", exact.e_gt_sq)
      .add("e_cross", exact.e_cross)
      .add("e_mm_sq", exact.e_mm_sq)
      .add("first_moment_mse", optional_cell(first_moment))
      .add("poissonized_mse", poissonized)
      .add("gap_exact_first_moment", optional_cell(gap(exact.mse, first_moment)))
      .add("gap_exact_poissonized", optional_cell(gap(exact.mse, poissonized)))
      .add("gap_first_moment_poissonized",
           optional_cell(gap(first_moment, poissonized)));
  if (cfg.oracle) r.add("oracle_mse", *oracle);
  return r.output();
}

Output cmd_worst_case(const Config& cfg) {
  const std::int64_t n = require_n(cfg, 2);
  if (!cfg.m) throw UsageError("--m is required (integer or 'inf')");
  const AlphabetSize m = parse_alphabet_size(*cfg.m);
  const WorstCaseSolution sol = solve_worst_case(m, n);

  Record r;
  r.add("n", n)
      .add("m", m.is_infinite() ? Cell(std::string("inf")) : Cell(m.value()))
      .add("regime", std::string(regime_name(sol.regime)))
      .add("alpha", sol.alpha)
      .add("w", sol.w)
      .add("c", sol.c)
      .add("mse_leading", sol.mse_leading)
      .add("uniform_support", sol.uniform_support)
      .add("atom_weight", sol.atom_weight())
      .add("total_support", sol.total_support());
  return r.output();
}

std::vector<double> phase_ratios(const Config& cfg) {
  const bool has_range = cfg.from || cfg.to || cfg.step;
  if (has_range == cfg.ratios.has_value()) {
    throw UsageError("give either --ratios or --from/--to/--step");
  }
  std::vector<double> ratios;
  if (cfg.ratios) {
    ratios = parse_real_list(*cfg.ratios);
  } else {
    if (!cfg.from || !cfg.to || !cfg.step) {
      throw UsageError("--from, --to and --step must be given together");
    }
    const double from = *cfg.from;
    const double to = *cfg.to;
    const double step = *cfg.step;
    if (!(step > 0.0) || !std::isfinite(from) || !std::isfinite(to) ||
        to < from) {
      throw UsageError("empty or invalid ratio range");
    }
    const auto count =
        static_cast<std::int64_t>(std::floor((to - from) / step + 1e-9)) + 1;
    for (std::int64_t i = 0; i < count; ++i) ratios.push_back(from + i * step);
  }
  if (ratios.empty()) throw UsageError("empty ratio list");
  std::sort(ratios.begin(), ratios.end());
  return ratios;
}

Output cmd_phase_curve(const Config& cfg) {
  const auto points = phase_curve(phase_ratios(cfg), cfg.n_ref);
  Output out;
  out.table.columns = {"b", "mse"};
  out.json = Json::object();
  out.json["n_ref"] = cfg.n_ref;
  out.json["points"] = Json::array();
  for (const PhasePoint& p : points) {
    out.table.rows.push_back({p.b, p.alpha});
    out.json["points"].push_back({{"b", p.b}, {"mse", p.alpha}});
  }
  return out;
}

Output cmd_simulate(const Config& cfg) {
  const Distribution dist = load_distribution(cfg);
  const std::int64_t n = require_n(cfg, 1);
  if (!cfg.trials) throw UsageError("--trials is required");
  if (*cfg.trials < 2) throw UsageError("--trials must be >= 2");

  const McResult mc =
      monte_carlo_mse(dist, n, *cfg.trials, cfg.seed, {.threads = cfg.threads});
  std::optional<double> exact;
  std::optional<double> z;
  const double m = static_cast<double>(dist.size());
  if (m * m <= kDeskScalePairs) {
    exact = exact_mse(dist, n).mse;
    if (mc.std_error > 0.0) z = (mc.mse_estimate - *exact) / mc.std_error;
  }
  Record r;
  r.add("n", n)
      .add("m", static_cast<std::int64_t>(dist.size()))
      .add("trials", mc.trials)
      .add("seed", std::to_string(mc.seed))
      .add("mse_estimate", mc.mse_estimate)
      .add("std_error", mc.std_error)
      .add("exact_mse", optional_cell(exact))
      .add("z_score", optional_cell(z));
  return r.output();
}

// Central-difference residuals: |g'| at extremes, |g''| at inflections.
double first_difference(const std::function<double(double)>& f, double x) {
  constexpr double h = 1e-5;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_difference(const std::function<double(double)>& f, double x) {
  constexpr double h = 1e-4;
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

Output cmd_exp_quad(const Config& cfg) {
  if (!cfg.b) throw UsageError("--b is required");
  const double b = *cfg.b;
  auto g = [b](double u) { return exp_quad(u, b); };

  Output out;
  out.table.columns = {"kind", "u", "residual"};
  out.json = Json::object();
  out.json["b"] = b;
  auto emit = [&](const std::string& kind, const std::vector<double>& points,
                  auto residual) {
    Json us = Json::array();
    Json rs = Json::array();
    for (double u : points) {
      const double res = std::abs(residual(g, u));
      out.table.rows.push_back({kind, u, res});
      us.push_back(u);
      rs.push_back(res);
    }
    out.json[kind == "extreme" ? "extremes" : "inflections"] = us;
    out.json[kind == "extreme" ? "extreme_residuals" : "inflection_residuals"] = rs;
  };
  emit("extreme", exp_quad_extremes(b), first_difference);
  emit("inflection", exp_quad_inflections(b), second_difference);
  return out;
}

Output cmd_beta_mode(const Config& cfg) {
  if (!cfg.a || !cfg.b) throw UsageError("--a and --b are required");
  const double a = *cfg.a;
  const double b = *cfg.b;
  const double mode = beta_mode(a, b);
  auto f = [a, b](double x) { return std::pow(x, a) * std::pow(1.0 - x, b); };
  Record r;
  r.add("a", a).add("b", b).add("mode", mode)
      .add("residual", std::abs(first_difference(f, mode)));
  return r.output();
}

void emit(const Output& result, const Config& cfg, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + cfg.output_path);
    sink = &file;
  }
  if (cfg.format == "json") {
    *sink << result.json.dump(2) << '\n';
  } else {
    write_csv(result.table, *sink);
  }
  sink->flush();
  if (!*sink) throw std::runtime_error("write failed");
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  CLI::App app{"Mean-squared error of the Good-Turing missing-mass estimator",
               "gt-risk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output_path, "Write to PATH instead of stdout");

  auto add_dist = [&cfg](CLI::App* sub) {
    sub->add_option("--dist", cfg.dist,
                    "uniform:M | dirac-uniform:M:W | zipf:M:S | w1,w2,...");
    sub->add_option("--dist-file", cfg.dist_file,
                    "File with one probability per line");
  };

  std::function<Output(const Config&)> command;

  auto* mse = app.add_subcommand("mse", "Exact and asymptotic MSE");
  add_dist(mse);
  mse->add_option("--n", cfg.n, "Sample size");
  mse->add_flag("--oracle", cfg.oracle, "Also run the brute-force enumeration");
  mse->callback([&] { command = cmd_mse; });

  auto* worst = app.add_subcommand("worst-case", "Worst-case MSE over alphabet size m");
  worst->add_option("--n", cfg.n, "Sample size");
  worst->add_option("--m", cfg.m, "Alphabet size, or 'inf'");
  worst->callback([&] { command = cmd_worst_case; });

  auto* phase = app.add_subcommand("phase-curve", "Leading constant versus m/n as CSV");
  phase->add_option("--from", cfg.from, "First ratio m/n");
  phase->add_option("--to", cfg.to, "Last ratio m/n");
  phase->add_option("--step", cfg.step, "Ratio step");
  phase->add_option("--ratios", cfg.ratios, "Explicit comma-separated ratios");
  phase->add_option("--n-ref", cfg.n_ref, "Sample size used to set m = round(b n)");
  phase->callback([&] { command = cmd_phase_curve; });

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo MSE estimate");
  add_dist(sim);
  sim->add_option("--n", cfg.n, "Sample size");
  sim->add_option("--trials", cfg.trials, "Number of simulated samples");
  sim->add_option("--seed", cfg.seed, "64-bit seed");
  sim->add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
  sim->callback([&] { command = cmd_simulate; });

  auto* lemmas = app.add_subcommand("lemmas", "Auxiliary analytic facts");
  lemmas->require_subcommand(1);
  auto* quad = lemmas->add_subcommand("exp-quad", "Extremes and inflections of (u^2+bu)e^-u");
  quad->add_option("--b", cfg.b, "Linear coefficient b");
  quad->callback([&] { command = cmd_exp_quad; });
  auto* beta = lemmas->add_subcommand("beta-mode", "Maximizer of x^a (1-x)^b");
  beta->add_option("--a", cfg.a, "Exponent a");
  beta->add_option("--b", cfg.b, "Exponent b");
  beta->callback([&] { command = cmd_beta_mode; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    emit(command(cfg), cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputationError;
  }
  return kExitOk;
}

}  // namespace gtrisk::cli
