// Copyright 2026 The vgip Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vgip/commands.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "vgip/errors.hpp"
#include "vgip/special_math.hpp"

namespace vgip {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vgip_cmd_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    unsetenv(kOutDirEnv);
    config_ = parse_config(R"({
      "model": {"sigma": 1, "m": 100, "r": 0, "T": 1},
      "grid": {"n_steps": 50},
      "factor": {"components": [{"weight": 0.4, "type": "atom", "x": 0},
                                {"weight": 0.6, "type": "atom", "x": 1}]},
      "simulation": {"n_paths": 6, "seed": 5}})");
  }
  void TearDown() override {
    unsetenv(kOutDirEnv);
    fs::remove_all(dir_);
  }

  RunOptions options(const std::string& sub, unsigned threads = 1) const {
    RunOptions o;
    o.threads = threads;
    o.out_dir = (dir_ / sub).string();
    return o;
  }

  fs::path dir_;
  ScenarioConfig config_;
};

TEST_F(CommandsTest, OutputDirectoryPrecedence) {
  RunOptions o;
  EXPECT_EQ(resolve_output_dir(config_, o), fs::path("out"));
  setenv(kOutDirEnv, "from_env", 1);
  EXPECT_EQ(resolve_output_dir(config_, o), fs::path("from_env"));
  o.out_dir = "from_flag";
  EXPECT_EQ(resolve_output_dir(config_, o), fs::path("from_flag"));
}

TEST_F(CommandsTest, SimulateIsByteIdenticalAcrossThreadCounts) {
  const auto a = cmd_simulate(config_, options("a", 1));
  const auto b = cmd_simulate(config_, options("b", 4));
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(rows(a).size(), 1u + 6u * 51u);
  auto seeded = options("c");
  seeded.seed = 6;
  EXPECT_NE(slurp(cmd_simulate(config_, seeded)), slurp(a));
}

TEST_F(CommandsTest, SingleStepGridHasTwoRowsPerPath) {
  config_.n_steps = 1;
  config_.n_paths = 1;
  const auto r = rows(cmd_simulate(config_, options("one")));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[1][2], "0");
  EXPECT_EQ(r[2][2], "1");
  EXPECT_EQ(r[2][4], "1");  // bridge pinned at 1
}

TEST_F(CommandsTest, BinaryBondPricesBoundedAndResolve) {
  config_.model.r = 0.05;
  const auto run = cmd_price(config_, options("p"));
  EXPECT_EQ(run.method, "binary_bond");
  const auto r = rows(run.csv);
  EXPECT_EQ(r[0], (std::vector<std::string>{"path_id", "k", "t", "info", "bridge", "price"}));
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double t = std::stod(r[i][2]);
    const double p = std::stod(r[i][5]);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, std::exp(-0.05 * (1.0 - t)) + 1e-15);
    if (r[i][1] == "50") EXPECT_TRUE(p == 0.0 || p == 1.0);
  }
}

TEST_F(CommandsTest, ForcedGeneralKernelMatchesClosedForm) {
  config_.factor = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  const auto closed = rows(cmd_price(config_, options("closed")).csv);
  auto forced = options("general");
  forced.force_general_kernel = true;
  const auto run = cmd_price(config_, forced);
  EXPECT_EQ(run.method, "general_kernel");
  const auto general = rows(run.csv);
  ASSERT_EQ(closed.size(), general.size());
  for (std::size_t i = 1; i < closed.size(); ++i) {
    const double a = std::stod(closed[i][5]);
    const double b = std::stod(general[i][5]);
    EXPECT_LE(std::abs(a - b), 1e-8 * std::max(std::abs(a), 1e-300)) << "row " << i;
  }
}

TEST_F(CommandsTest, UnitPayoffGivesDiscountCurve) {
  config_.payoff = Payoff::exponential_scale(0.0);
  config_.model.r = 0.1;
  config_.factor = MarketFactorDistribution::normal(0.0, 1.0);
  const auto r = rows(cmd_price(config_, options("unit")).csv);
  for (std::size_t i = 1; i < r.size(); ++i) {
    EXPECT_NEAR(std::stod(r[i][5]), std::exp(-0.1 * (1.0 - std::stod(r[i][2]))), 1e-14);
  }
}

TEST_F(CommandsTest, PosteriorJsonWrittenWhenRequested) {
  config_.output_formats = {"csv", "posterior_json"};
  const auto run = cmd_price(config_, options("post"));
  const auto jsonl = run.csv.parent_path() / "posteriors.jsonl";
  ASSERT_TRUE(fs::exists(jsonl));
  std::istringstream in(slurp(jsonl));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    EXPECT_NE(line.find("\"log_Z\""), std::string::npos);
  }
  EXPECT_EQ(n, 6u * 10u);
}

TEST_F(CommandsTest, SweepSingleValueEqualsPrice) {
  const auto price_rows = rows(cmd_price(config_, options("p")).csv);
  const auto sweep_rows = rows(cmd_sweep(config_, SweepAxis::kSigma, {1.0}, options("s")));
  ASSERT_EQ(price_rows.size(), sweep_rows.size());
  for (std::size_t i = 1; i < price_rows.size(); ++i) {
    EXPECT_EQ(sweep_rows[i][0], "sigma");
    EXPECT_EQ(sweep_rows[i][1], "1");
    EXPECT_EQ(std::vector<std::string>(sweep_rows[i].begin() + 2, sweep_rows[i].end()),
              price_rows[i]);
  }
}

TEST_F(CommandsTest, SweepOverMShrinksBridgeSpread) {
  config_.n_paths = 400;
  config_.n_steps = 2;
  const auto r = rows(cmd_sweep(config_, SweepAxis::kM, {10.0, 100.0, 1000.0}, options("m")));
  std::map<std::string, std::vector<double>> mid;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i][3] == "1") mid[r[i][1]].push_back(std::stod(r[i][6]));
  }
  double prev = INFINITY;
  for (const char* m : {"10", "100", "1000"}) {
    const auto& b = mid[m];
    double mean = 0, sq = 0;
    for (double x : b) mean += x;
    mean /= b.size();
    for (double x : b) sq += (x - mean) * (x - mean);
    const double var = sq / (b.size() - 1);
    const double target = bridge_moments(std::stod(m), 0.5, 1.0).variance;
    EXPECT_NEAR(var / target, 1.0, 0.3) << "m=" << m;
    EXPECT_LT(var, prev);
    prev = var;
  }
}

TEST_F(CommandsTest, SweepAxisParsing) {
  EXPECT_EQ(parse_sweep_axis("r"), SweepAxis::kR);
  EXPECT_THROW(parse_sweep_axis("T"), ConfigError);
  EXPECT_THROW(cmd_sweep(config_, SweepAxis::kSigma, {}, options("x")), ConfigError);
  EXPECT_THROW(cmd_sweep(config_, SweepAxis::kSigma, {-1.0}, options("x")), ConfigError);
}

TEST(Verify, NegativeToleranceRejected) {
  VerifySpec spec;
  spec.sigma_band = -4.0;
  EXPECT_THROW(cmd_verify(spec, 1), ConfigError);
  spec.sigma_band = 4.0;
  spec.ks_coefficient = 0.0;
  EXPECT_THROW(cmd_verify(spec, 1), ConfigError);
}

TEST(Verify, QuickLevelPasses) {
  const auto report = cmd_verify(VerifySpec{}, 2);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  EXPECT_GE(report.checks.size(), 30u);
}

}  // namespace
}  // namespace vgip
