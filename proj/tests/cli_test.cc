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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dist_spec.h"
#include "gtrisk/minimax.h"
#include "json.hpp"

namespace gtrisk::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Result r = run_cli(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return nlohmann::json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gtrisk_cli_test_" + name);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.625), "0.625");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(DistSpec, Families) {
  EXPECT_EQ(parse_dist_spec("uniform:4").size(), 4u);
  const auto mix = parse_dist_spec("dirac-uniform:3:0.6");
  ASSERT_EQ(mix.size(), 4u);
  EXPECT_NEAR(mix[3], 0.4, 1e-15);
  const auto z = parse_dist_spec("zipf:3:1");
  EXPECT_NEAR(z[0], 6.0 / 11.0, 1e-15);
  EXPECT_NEAR(z[2], 2.0 / 11.0, 1e-15);
  const auto inline_weights = parse_dist_spec("1, 3");
  EXPECT_EQ(inline_weights[1], 0.75);
  EXPECT_THROW(parse_dist_spec("uniform"), ValidationError);
  EXPECT_THROW(parse_dist_spec("poisson:3"), ValidationError);
  EXPECT_THROW(parse_dist_spec("0.5,abc"), ValidationError);
  EXPECT_THROW(parse_dist_spec("0,0"), ValidationError);
}

TEST(DistSpec, AlphabetSize) {
  EXPECT_TRUE(parse_alphabet_size("inf").is_infinite());
  EXPECT_TRUE(parse_alphabet_size("Infinity").is_infinite());
  EXPECT_EQ(parse_alphabet_size("50").value(), 50);
  EXPECT_THROW(parse_alphabet_size("5x"), ValidationError);
}

TEST(DistFile, CommentsAndTolerance) {
  const auto path = temp_file("dist.txt");
  {
    std::ofstream f(path);
    f << "# three symbols\n0.7\n\n0.2   # second\n0.1\n";
  }
  const auto d = read_dist_file(path.string());
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[1], 0.2, 1e-15);
  {
    std::ofstream f(path);
    f << "0.5\n0.6\n";
  }
  EXPECT_THROW(read_dist_file(path.string()), ValidationError);
  std::filesystem::remove(path);
  EXPECT_THROW(read_dist_file(path.string()), ValidationError);
}

TEST(MseCommand, TwoSymbols) {
  const auto j = run_json({"mse", "--dist", "uniform:2", "--n", "2"});
  EXPECT_DOUBLE_EQ(j["exact_mse"].get<double>(), 0.625);
  EXPECT_DOUBLE_EQ(j["first_moment_mse"].get<double>(), 0.375);
  for (const char* key : {"n", "m", "exact_mse", "e_gt_sq", "e_cross", "e_mm_sq",
                          "first_moment_mse", "poissonized_mse", "gap_exact_first_moment",
                          "gap_exact_poissonized", "gap_first_moment_poissonized"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_NEAR(j["gap_exact_first_moment"].get<double>(), 0.25, 1e-15);
}

TEST(MseCommand, PointMassCsv) {
  const Result r = run_cli({"mse", "--dist", "1.0", "--n", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0],
            "n,m,exact_mse,e_gt_sq,e_cross,e_mm_sq,first_moment_mse,poissonized_mse,"
            "gap_exact_first_moment,gap_exact_poissonized,gap_first_moment_poissonized");
  // Exact and first-moment values vanish; the Poissonized form keeps an
  // e^{-n} tail: (6 e^-5 - e^-10) / 5.
  EXPECT_EQ(rows[1].substr(0, 15), "5,1,0,0,0,0,0,0");
  const auto j = run_json({"mse", "--dist", "1.0", "--n", "5"});
  EXPECT_EQ(j["exact_mse"].get<double>(), 0.0);
  EXPECT_EQ(j["first_moment_mse"].get<double>(), 0.0);
  EXPECT_NEAR(j["poissonized_mse"].get<double>(),
              (6 * std::exp(-5.0) - std::exp(-10.0)) / 5, 1e-16);
}

TEST(MseCommand, OracleFlag) {
  const auto j = run_json({"mse", "--dist", "0.7,0.2,0.1", "--n", "4", "--oracle"});
  EXPECT_NEAR(j["oracle_mse"].get<double>(), j["exact_mse"].get<double>(), 1e-12);

  const Result big = run_cli({"mse", "--dist", "uniform:100", "--n", "100", "--oracle"});
  EXPECT_EQ(big.code, kExitComputationError);
  EXPECT_NE(big.err.find("instance too large for oracle"), std::string::npos);
}

TEST(MseCommand, SingleDrawHasNoFirstMomentValue) {
  const auto j = run_json({"mse", "--dist", "uniform:2", "--n", "1"});
  EXPECT_TRUE(j["first_moment_mse"].is_null());
  EXPECT_DOUBLE_EQ(j["exact_mse"].get<double>(), 0.25);
}

TEST(MseCommand, DistFile) {
  const auto path = temp_file("mse_dist.txt");
  {
    std::ofstream f(path);
    f << "0.5\n0.5\n";
  }
  const auto j = run_json({"mse", "--dist-file", path.string(), "--n", "2"});
  EXPECT_DOUBLE_EQ(j["exact_mse"].get<double>(), 0.625);
  std::filesystem::remove(path);
}

TEST(MseCommand, UsageErrors) {
  EXPECT_EQ(run_cli({"mse", "--n", "2"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"mse", "--dist", "uniform:2", "--dist-file", "x", "--n", "2"}).code,
            kExitUsageError);
  EXPECT_EQ(run_cli({"mse", "--dist", "uniform:2"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"mse", "--dist", "bogus:1", "--n", "2"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"mse", "--dist", "uniform:2", "--n", "two"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsageError);
}

TEST(WorstCaseCommand, InfiniteAlphabet) {
  const auto j = run_json({"worst-case", "--n", "100", "--m", "inf"});
  EXPECT_EQ(j["regime"], "plateau");
  EXPECT_NEAR(j["alpha"].get<double>(), 0.608036786522882, 1e-14);
  EXPECT_NEAR(j["c"].get<double>(), 0.852605502013725, 1e-14);
  EXPECT_EQ(j["w"].get<double>(), 1.0);
  EXPECT_EQ(j["m"], "inf");
  for (const char* key : {"alpha", "w", "c", "regime", "mse_leading",
                          "uniform_support", "atom_weight", "total_support"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(WorstCaseCommand, Constrained) {
  const auto j = run_json({"worst-case", "--n", "100", "--m", "50"});
  EXPECT_EQ(j["regime"], "constrained");
  EXPECT_NEAR(j["w"].get<double>(), 0.5 * j["c"].get<double>(), 1e-12);
  EXPECT_EQ(j["total_support"].get<int>(), 50);
}

TEST(WorstCaseCommand, UsageErrors) {
  EXPECT_EQ(run_cli({"worst-case", "--n", "1", "--m", "5"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"worst-case", "--n", "10", "--m", "1"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"worst-case", "--n", "10"}).code, kExitUsageError);
}

TEST(PhaseCurveCommand, RangeCsv) {
  const Result r = run_cli({"phase-curve", "--from", "0.1", "--to", "2.0", "--step", "0.1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0], "b,mse");
  double previous_b = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto comma = rows[i].find(',');
    const double b = std::stod(rows[i].substr(0, comma));
    const std::string mse = rows[i].substr(comma + 1);
    EXPECT_GT(b, previous_b);
    previous_b = b;
    if (b >= 1.2 - 1e-12) EXPECT_EQ(mse, "0.608036786523") << rows[i];
  }
  EXPECT_EQ(rows[1], "0.1,0.0829738929844");
}

TEST(PhaseCurveCommand, RoundTripsInProcessValues) {
  const Result r = run_cli({"phase-curve", "--ratios", "1.5,0.05,1.173,0.7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  const std::vector<double> sorted = {0.05, 0.7, 1.173, 1.5};
  const auto points = phase_curve(sorted, 1000);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto comma = rows[i + 1].find(',');
    EXPECT_EQ(std::stod(rows[i + 1].substr(0, comma)), points[i].b);
    const double printed = std::stod(rows[i + 1].substr(comma + 1));
    EXPECT_NEAR(printed, points[i].alpha, 5e-12 * points[i].alpha);
  }
  EXPECT_NEAR(std::stod(rows[3].substr(rows[3].find(',') + 1)), 0.608, 1e-3);
}

TEST(PhaseCurveCommand, Json) {
  const auto j = run_json({"phase-curve", "--ratios", "2.0", "--n-ref", "500"});
  EXPECT_EQ(j["n_ref"], 500);
  ASSERT_EQ(j["points"].size(), 1u);
  EXPECT_NEAR(j["points"][0]["mse"].get<double>(), plateau_alpha(), 1e-15);
}

TEST(PhaseCurveCommand, UsageErrors) {
  EXPECT_EQ(run_cli({"phase-curve", "--from", "2", "--to", "1", "--step", "0.1"}).code,
            kExitUsageError);
  EXPECT_EQ(run_cli({"phase-curve", "--from", "0.1", "--to", "1", "--step", "0"}).code,
            kExitUsageError);
  EXPECT_EQ(run_cli({"phase-curve"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"phase-curve", "--ratios", "0.5,-1"}).code, kExitUsageError);
}

TEST(SimulateCommand, ZScoreAndDeterminism) {
  const std::vector<std::string> args = {"simulate", "--dist", "uniform:2", "--n", "2",
                                         "--trials", "1000000", "--seed", "7"};
  const Result first = run_cli(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const Result second = run_cli(args);
  EXPECT_EQ(first.out, second.out);

  auto json_args = args;
  const auto j = run_json(json_args);
  EXPECT_LE(std::abs(j["z_score"].get<double>()), 4.0);
  EXPECT_DOUBLE_EQ(j["exact_mse"].get<double>(), 0.625);
  EXPECT_EQ(j["seed"], "7");
}

TEST(SimulateCommand, OutputFile) {
  const auto path = temp_file("sim.csv");
  const Result r = run_cli({"simulate", "--dist", "1.0", "--n", "3", "--trials", "10",
                            "--output", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  EXPECT_EQ(lines(content.str())[0], "n,m,trials,seed,mse_estimate,std_error,exact_mse,z_score");
  std::filesystem::remove(path);
}

TEST(SimulateCommand, UsageErrors) {
  EXPECT_EQ(run_cli({"simulate", "--dist", "uniform:2", "--n", "2", "--trials", "1"}).code,
            kExitUsageError);
  EXPECT_EQ(run_cli({"simulate", "--trials", "1"}).code, kExitUsageError);
}

TEST(LemmasCommand, ExpQuad) {
  const auto zero = run_json({"lemmas", "exp-quad", "--b", "0"});
  EXPECT_EQ(zero["extremes"], nlohmann::json::array({2.0}));

  const auto neg = run_json({"lemmas", "exp-quad", "--b", "-0.8"});
  ASSERT_EQ(neg["extremes"].size(), 2u);
  for (const auto& r : neg["extreme_residuals"]) EXPECT_LE(r.get<double>(), 1e-8);
  for (const auto& r : neg["inflection_residuals"]) EXPECT_LE(r.get<double>(), 1e-7);

  const Result csv = run_cli({"lemmas", "exp-quad", "--b", "1.2"});
  ASSERT_EQ(csv.code, kExitOk);
  const auto rows = lines(csv.out);
  EXPECT_EQ(rows[0], "kind,u,residual");
  EXPECT_EQ(rows.size(), 3u);
}

TEST(LemmasCommand, BetaMode) {
  const auto j = run_json({"lemmas", "beta-mode", "--a", "1", "--b", "9"});
  EXPECT_DOUBLE_EQ(j["mode"].get<double>(), 0.1);
  EXPECT_LE(j["residual"].get<double>(), 1e-6);
  EXPECT_EQ(run_cli({"lemmas", "beta-mode", "--a", "0", "--b", "1"}).code, kExitUsageError);
  EXPECT_EQ(run_cli({"lemmas"}).code, kExitUsageError);
}

TEST(Cli, HelpExitsCleanly) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("worst-case"), std::string::npos);
}

TEST(Cli, JsonSchemaIsStable) {
  const auto a = run_json({"worst-case", "--n", "30", "--m", "10"});
  const auto b = run_json({"worst-case", "--n", "30", "--m", "10"});
  EXPECT_EQ(a.dump(), b.dump());
}

}  // namespace
}  // namespace gtrisk::cli
