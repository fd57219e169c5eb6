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

#include "vgip/stats_validation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "vgip/random.hpp"

namespace vgip {
namespace {

std::vector<double> normals(std::size_t n, std::uint64_t key) {
  Xoshiro256pp rng(key);
  NormalSampler normal;
  std::vector<double> out(n);
  for (auto& x : out) x = normal(rng);
  return out;
}

TEST(Summarize, KnownSample) {
  const std::vector<double> x = {1, 2, 3, 4};
  const auto s = summarize(x);
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
  EXPECT_NEAR(s.mean_se, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_THROW(summarize(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(MomentCheck, BandLogic) {
  const auto z = normals(10000, 1);
  EXPECT_TRUE(mean_check("m", z, 0.0).passed());
  EXPECT_FALSE(mean_check("m", z, 0.2).passed());
  EXPECT_TRUE(variance_check("v", z, 1.0).passed());
  EXPECT_FALSE(variance_check("v", z, 1.2).passed());
  EXPECT_FALSE(mean_check("m", z, 0.0, 0.0).passed());
}

TEST(KsTest, CalibrationAndPower) {
  const auto z = normals(5000, 2);
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  EXPECT_TRUE(ks_test(z, phi).passed);
  EXPECT_FALSE(ks_test(z, [&](double x) { return phi(x - 0.2); }).passed);
  EXPECT_NEAR(ks_test(z, phi).critical, 1.63 / std::sqrt(5000.0), 1e-15);
  EXPECT_THROW(ks_test(std::vector<double>(99, 0.0), phi), std::invalid_argument);
  EXPECT_THROW(ks_test(z, phi, -1.0), std::invalid_argument);
}

TEST(KsTest, FalseRejectionRateNearOnePercent) {
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  int rejected = 0;
  for (std::uint64_t k = 0; k < 400; ++k) {
    rejected += !ks_test(normals(500, 1000 + k), phi).passed;
  }
  EXPECT_LE(rejected, 12);  // about 4 expected
}

TEST(KsTest, StatisticOfPointMass) {
  const std::vector<double> x(200, 0.5);
  EXPECT_NEAR(ks_statistic(x, [](double y) { return y; }), 0.5, 1e-15);
}

TEST(Cdfs, BetaAndGammaSpotValues) {
  EXPECT_NEAR(beta_cdf(0.5, 2.0, 2.0), 0.5, 1e-15);
  EXPECT_EQ(beta_cdf(-0.1, 2.0, 2.0), 0.0);
  EXPECT_EQ(beta_cdf(1.1, 2.0, 2.0), 1.0);
  EXPECT_NEAR(gamma_cdf(1.0, 1.0, 1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_EQ(gamma_cdf(-1.0, 1.0, 1.0), 0.0);
}

TEST(Correlation, IndependentPassDependentFail) {
  const auto x = normals(20000, 3);
  const auto y = normals(20000, 4);
  EXPECT_TRUE(correlation_zero_test(x, y).passed);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = y[i] + 0.1 * x[i];
  EXPECT_FALSE(correlation_zero_test(x, z).passed);
  EXPECT_NEAR(pearson(x, x), 1.0, 1e-14);
}

TEST(Correlation, InputValidation) {
  const auto x = normals(20000, 5);
  EXPECT_THROW(correlation_zero_test(x, std::vector<double>(20000, 1.0)), std::invalid_argument);
  EXPECT_THROW(correlation_zero_test(normals(100, 1), normals(100, 2)), std::invalid_argument);
  EXPECT_THROW(correlation_zero_test(x, normals(19999, 6)), std::invalid_argument);
}

TEST(Martingale, ConstantPricesAreExactlyFlat) {
  const auto grid = TimeGrid::make(1.0, 50);
  std::vector<std::vector<double>> prices(10000, std::vector<double>(51, 0.7));
  const auto r = martingale_flatness(prices, 0.0, grid);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.worst_z, 0.0);
  EXPECT_EQ(r.nodes_checked, 5u);  // nodes 10..50; node 0 is the reference
}

TEST(Martingale, DiscountingAndDrift) {
  const auto grid = TimeGrid::make(1.0, 20);
  const double r = 0.05;
  std::vector<std::vector<double>> prices(20000, std::vector<double>(21));
  Xoshiro256pp rng(99);
  NormalSampler normal;
  for (auto& p : prices) {
    double level = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k > 0) level += 0.05 * normal(rng);
      p[k] = level * std::exp(r * grid.time(k));  // discounted level is a martingale
    }
  }
  EXPECT_TRUE(martingale_flatness(prices, r, grid, 5).passed);
  EXPECT_FALSE(martingale_flatness(prices, 0.0, grid, 5).passed);
  EXPECT_THROW(
      martingale_flatness(std::vector<std::vector<double>>(10, std::vector<double>(21)), r, grid),
      std::invalid_argument);
}

TEST(RunReport, OverallPassAndText) {
  RunReport report;
  report.add({"a", 1.0, 2.0, true, 0.1, ""});
  EXPECT_TRUE(report.passed());
  report.add({"b", 3.0, 2.0, false, 0.1, "why"});
  EXPECT_FALSE(report.passed());
  const auto text = report.to_text();
  EXPECT_NE(text.find("[PASS] a"), std::string::npos);
  EXPECT_NE(text.find("[FAIL] b"), std::string::npos);
  EXPECT_NE(text.find("overall: FAIL"), std::string::npos);
  EXPECT_NE(report.to_json().find("\"passed\""), std::string::npos);
}

}  // namespace
}  // namespace vgip
