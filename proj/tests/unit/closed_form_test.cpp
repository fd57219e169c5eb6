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

#include "vgip/closed_form.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "vgip/errors.hpp"
#include "vgip/verify.hpp"

namespace vgip {
namespace {

MarketState state(double xi, double bridge, double sigma, double r = 0.0) {
  MarketState s;
  s.t = bridge;
  s.xi = xi;
  s.bridge = bridge;
  s.sigma = sigma;
  s.r = r;
  return s;
}

TEST(BinaryBond, SpotValue) {
  // p1 e^A / (p0 + p1 e^A) with A = (0.5 - 0.25) / 0.5.
  const double expected = 0.6 * std::exp(0.5) / (0.4 + 0.6 * std::exp(0.5));
  const double p = binary_bond_price(BinaryBondSpec::make(0.4, 0.6), state(0.5, 0.5, 1.0));
  EXPECT_NEAR(p, expected, 1e-15);
  EXPECT_NEAR(p, 0.71207, 1e-5);
}

TEST(BinaryBond, SaturatesWithoutOverflow) {
  const auto spec = BinaryBondSpec::make(0.4, 0.6);
  EXPECT_EQ(binary_bond_price(spec, state(1e6, 0.5, 4.0)), 1.0);
  EXPECT_EQ(binary_bond_price(spec, state(-1e6, 0.5, 4.0)), 0.0);
  EXPECT_THROW(BinaryBondSpec::make(0.3, 0.3), ConfigError);
}

TEST(RecoveryBond, HighPrecisionReferences) {
  const auto spec = RecoveryBondSpec::make(0.4, 0.6, 0.0, 0.5, 1.0);
  EXPECT_NEAR(recovery_bond_price(spec, state(0.5, 0.5, 1.0)), 0.7548490311553534548, 1e-12);
  EXPECT_NEAR(recovery_bond_price(spec, state(-1.0, 0.25, 2.0, 0.03)), 0.25846084051357926094,
              1e-12);
  EXPECT_NEAR(recovery_bond_price(spec, state(2.0, 0.75, 3.0, 0.03)), 0.98334952574194748645,
              1e-12);
}

TEST(RecoveryBond, AccurateAsBridgeVanishes) {
  // 30-digit quadrature references at xi = 0.3, sigma = 1.
  const auto spec = RecoveryBondSpec::make(0.4, 0.6, 0.0, 0.5, 1.0);
  EXPECT_NEAR(recovery_bond_price(spec, state(0.3, 0.5e-8, 1.0)), 0.741458581306781582937, 1e-14);
  EXPECT_NEAR(recovery_bond_price(spec, state(0.3, 2e-8, 1.0)), 0.741458580720827591849, 1e-14);
  EXPECT_NEAR(recovery_bond_price(spec, state(0.3, 1e-6, 1.0)), 0.741458542438460752208, 1e-14);
  EXPECT_NEAR(recovery_bond_price(spec, state(0.3, 1e-4, 1.0)), 0.741454674737933316717, 1e-14);
  EXPECT_THROW(RecoveryBondSpec::make(0.4, 0.6, 0.0, 1.5, 1.0), ConfigError);
}

TEST(RecoveryBond, AgreesWithKernelOverWideStateRange) {
  const auto spec = RecoveryBondSpec::make(0.4, 0.6, 0.0, 0.5, 1.0);
  const auto dist = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  for (double b : {0.0, 1e-12, 1e-8, 1e-6, 1e-3, 0.1, 0.9, 0.999999}) {
    for (double sigma : {0.1, 1.0, 5.0}) {
      for (double xi : {-40.0, -3.0, -0.01, 0.0, 0.01, 0.4, 3.0, 40.0}) {
        const auto s = state(xi, b, sigma);
        EXPECT_LE(
            relative_difference(recovery_bond_price(spec, s), price(Payoff::identity(), dist, s)),
            1e-9)
            << "b=" << b << " sigma=" << sigma << " xi=" << xi;
      }
    }
  }
}

TEST(LogNormal, SpotAtTimeZero) {
  MarketState origin;
  EXPECT_NEAR(lognormal_price(LogNormalSpec::make(0.0, 1.0), origin), std::exp(0.5), 1e-15);
  EXPECT_NEAR(lognormal_price(LogNormalSpec::make(0.0, 1.0), origin), 1.648721, 1e-6);
}

TEST(LogNormal, HighPrecisionReferences) {
  const auto ln = LogNormalSpec::make(0.0, 1.0);
  const auto sq = LogNormalSpec::make(0.0, 1.0, 2.0);
  EXPECT_NEAR(lognormal_price(ln, state(0.5, 0.5, 1.0)), 2.1170000166126746685, 1e-12);
  EXPECT_NEAR(power_payoff_price(sq, state(0.5, 0.5, 1.0)), 7.3890560989306502272, 1e-11);
  EXPECT_NEAR(lognormal_price(ln, state(2.0, 0.75, 3.0, 0.03)), 2.3809510292748525766, 1e-12);
  EXPECT_NEAR(power_payoff_price(sq, state(-1.0, 0.25, 2.0, 0.03)), 0.23431909737561162203, 1e-13);
}

TEST(LogNormal, BothFormsAgree) {
  for (const auto& s : oracle_state_grid()) {
    for (double q : {-1.0, 0.5, 1.0, 2.0}) {
      const auto spec = LogNormalSpec::make(0.3, 0.7, q);
      EXPECT_LE(
          relative_difference(power_payoff_price(spec, s), power_payoff_price_tilt_ratio(spec, s)),
          1e-12);
    }
  }
}

TEST(LogNormal, RegularAtZeroBridge) {
  const auto spec = LogNormalSpec::make(0.2, 0.5);
  // With no bridge information only the linear tilt sigma xi x acts.
  const auto s = state(0.8, 0.0, 1.5);
  const double tilted_mu = 0.2 + 0.25 * 1.5 * 0.8;
  EXPECT_NEAR(lognormal_price(spec, s), std::exp(tilted_mu + 0.125), 1e-13);
}

TEST(Exponential, HighPrecisionReferences) {
  const auto spec = ExponentialSpec::make(1.0);
  EXPECT_NEAR(exponential_payoff_price(spec, state(0.5, 0.5, 1.0)), 0.79788456080286535588, 1e-12);
  EXPECT_NEAR(exponential_payoff_price(spec, state(-1.0, 0.25, 2.0, 0.03)), 0.22963082073008588952,
              1e-12);
  EXPECT_NEAR(exponential_payoff_price(spec, state(2.0, 0.75, 3.0, 0.03)), 0.84549110277977802432,
              1e-12);
}

TEST(Exponential, AgreesWithKernelOverWideStateRange) {
  const auto spec = ExponentialSpec::make(1.0);
  const auto dist = MarketFactorDistribution::exponential(1.0);
  for (double b : {1e-12, 1e-8, 1e-6, 1e-3, 0.1, 0.9, 0.999999}) {
    for (double sigma : {0.1, 1.0, 5.0}) {
      for (double xi : {-40.0, -3.0, -0.01, 0.0, 0.01, 0.4}) {
        const auto s = state(xi, b, sigma);
        EXPECT_LE(relative_difference(exponential_payoff_price(spec, s),
                                      price(Payoff::identity(), dist, s)),
                  1e-9)
            << "b=" << b << " sigma=" << sigma << " xi=" << xi;
      }
    }
  }
  // No bridge information and a decaying tilt: Exp(lambda - sigma xi).
  EXPECT_NEAR(exponential_payoff_price(spec, state(0.5, 0.0, 1.0)), 2.0, 1e-14);
  EXPECT_THROW(exponential_payoff_price(spec, state(1.5, 0.0, 1.0)), IntegrabilityError);
}

TEST(Exponential, DeepNegativeInformationUsesHazardTail) {
  const auto spec = ExponentialSpec::make(1.0);
  const double p = exponential_payoff_price(spec, state(-200.0, 0.9, 4.0));
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1e-2);
  EXPECT_TRUE(std::isfinite(p));
}

TEST(OracleGrid, ClosedFormsMatchGeneralKernel) {
  EXPECT_EQ(oracle_state_grid().size(), 100u);
  EXPECT_LE(compare_binary_bond(0.4, 0.6).max_rel_error, 1e-8);
  EXPECT_LE(compare_binary_bond(0.05, 0.95).max_rel_error, 1e-8);
  EXPECT_LE(compare_recovery_bond(0.4, 0.6, 0.0, 0.5, 1.0).max_rel_error, 1e-8);
  EXPECT_LE(compare_recovery_bond(0.2, 0.8, 0.1, 0.9, 1.0).max_rel_error, 1e-8);
  EXPECT_LE(compare_power_payoff(0.0, 1.0, 1.0).max_rel_error, 1e-8);
  EXPECT_LE(compare_power_payoff(-0.5, 0.3, 3.0).max_rel_error, 1e-8);
  EXPECT_LE(compare_exponential(1.0).max_rel_error, 1e-8);
  EXPECT_LE(compare_exponential(0.2).max_rel_error, 1e-8);
}

TEST(Dispatch, RecognizesCanonicalPairsOnly) {
  EXPECT_EQ(match_closed_form(MarketFactorDistribution::binary(0.4, 0.6), Payoff::identity())->name,
            "binary_bond");
  EXPECT_EQ(
      match_closed_form(MarketFactorDistribution::recovery(0.4, 0.6, 0, 0.5, 1), Payoff::identity())
          ->name,
      "recovery_bond");
  EXPECT_EQ(match_closed_form(MarketFactorDistribution::exponential(1.0), Payoff::identity())->name,
            "exponential");
  EXPECT_TRUE(
      match_closed_form(MarketFactorDistribution::normal(0, 1), Payoff::exponential_scale(1.0)));
  EXPECT_FALSE(match_closed_form(MarketFactorDistribution::normal(0, 1), Payoff::digital(0.0)));
  EXPECT_FALSE(match_closed_form(MarketFactorDistribution::binary(0.4, 0.6),
                                 Payoff::exponential_scale(1.0)));
}

}  // namespace
}  // namespace vgip
