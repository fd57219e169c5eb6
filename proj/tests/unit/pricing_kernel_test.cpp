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

#include "vgip/pricing_kernel.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "vgip/errors.hpp"
#include "vgip/special_math.hpp"
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

double kernel(double x, const MarketState& s) { return std::exp(log_kernel(x, s)); }

// Posterior mean of X for a normal prior by adaptive double-exponential
// quadrature, independent of the Gauss-Legendre machinery under test.
double normal_prior_mean(double mu, double nu, const MarketState& s) {
  boost::math::quadrature::sinh_sinh<double> integrator;
  auto w = [&](double x) { return kernel(x, s) * normal_pdf_general(x, mu, nu); };
  const double z = integrator.integrate(w);
  const double m1 = integrator.integrate([&](double x) { return x * w(x); });
  return m1 / z;
}

TEST(LogKernel, ClosedFormAndDomain) {
  const auto s = state(0.7, 0.4, 2.0);
  EXPECT_NEAR(log_kernel(1.5, s), (2.0 * 0.7 * 1.5 - 0.5 * 4.0 * 2.25 * 0.4) / 0.6, 1e-14);
  EXPECT_EQ(log_kernel(3.0, state(0.0, 0.0, 1.0)), 0.0);
  auto bad = s;
  bad.bridge = 1.0;
  EXPECT_THROW(log_kernel(0.0, bad), StateError);
}

TEST(Posterior, AtTimeZeroEqualsPrior) {
  const auto dist = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  MarketState s0;
  EXPECT_NEAR(price(Payoff::identity(), dist, s0), dist.mean(), 1e-13);
  const auto post = posterior(dist, s0);
  EXPECT_NEAR(post.total_mass(), 1.0, 1e-13);
  EXPECT_NEAR(post.log_z, 0.0, 1e-13);
}

TEST(Posterior, NormalizedOnOracleGrid) {
  const auto dist = MarketFactorDistribution::make({{0.2, component::Atom{-1.0}},
                                                    {0.3, component::Normal{0.5, 2.0}},
                                                    {0.25, component::Uniform{-2.0, 3.0}},
                                                    {0.25, component::Exponential{0.7}}});
  for (const auto& s : oracle_state_grid()) {
    const auto post = posterior(dist, s);
    EXPECT_NEAR(post.total_mass(), 1.0, 1e-12);
    for (double m : post.node_masses) EXPECT_GE(m, 0.0);
  }
}

TEST(Price, NormalPriorMatchesIndependentQuadrature) {
  const auto dist = MarketFactorDistribution::normal(0.2, 1.3);
  for (const auto& s : {state(0.5, 0.5, 1.0), state(-3.0, 0.9, 4.0), state(4.0, 0.05, 2.0),
                        state(1.0, 0.99, 3.0)}) {
    const double expected = normal_prior_mean(0.2, 1.3, s);
    EXPECT_NEAR(price(Payoff::identity(), dist, s), expected,
                1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Price, UniformPriorMatchesTanhSinh) {
  const auto dist = MarketFactorDistribution::make({{1.0, component::Uniform{-1.0, 2.0}}});
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (const auto& s : {state(0.0, 0.3, 1.0), state(5.0, 0.99, 4.0), state(-5.0, 0.99, 4.0)}) {
    // Shift by the largest log-kernel on the support so nothing overflows.
    const double peak = std::clamp(s.xi / (s.sigma * s.bridge), -1.0, 2.0);
    const double shift = log_kernel(peak, s);
    auto w = [&](double x) { return std::exp(log_kernel(x, s) - shift); };
    const double z = integrator.integrate(w, -1.0, 2.0);
    const double m1 = integrator.integrate([&](double x) { return x * w(x); }, -1.0, 2.0);
    EXPECT_NEAR(price(Payoff::identity(), dist, s), m1 / z, 1e-10);
  }
}

TEST(Price, MatchesHighPrecisionReferences) {
  // 40-digit quadrature references of the tilted expectations.
  const auto rec = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  EXPECT_NEAR(price(Payoff::identity(), rec, state(0.5, 0.5, 1.0)), 0.7548490311553534548, 1e-12);
  auto s = state(-1.0, 0.25, 2.0, 0.03);
  EXPECT_NEAR(price(Payoff::identity(), rec, s), 0.25846084051357926094, 1e-12);
  EXPECT_NEAR(price(Payoff::identity(), MarketFactorDistribution::exponential(1.0), s),
              0.22963082073008588952, 1e-12);
  EXPECT_NEAR(price(Payoff::exponential_scale(1.0), MarketFactorDistribution::normal(0, 1), s),
              0.38632687997442545591, 1e-12);
}

TEST(Price, UnitPayoffIsDiscountCurve) {
  const auto dist = MarketFactorDistribution::normal(0.0, 1.0);
  for (double t : {0.0, 0.3, 0.9}) {
    auto s = state(1.2, t, 2.0, 0.04);
    s.t = t;
    EXPECT_NEAR(price(Payoff::exponential_scale(0.0), dist, s), std::exp(-0.04 * (1.0 - t)), 1e-15);
  }
}

TEST(Price, BinaryBondBoundedAndMonotoneInInformation) {
  const auto dist = MarketFactorDistribution::binary(0.4, 0.6);
  double prev = -1.0;
  for (double xi = -10.0; xi <= 10.0; xi += 0.5) {
    const double p = price(Payoff::identity(), dist, state(xi, 0.5, 1.0, 0.05));
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, std::exp(-0.05 * 0.5) + 1e-15);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(Price, ExtremeStatesStayFinite) {
  const auto dist = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  const double hi = price(Payoff::identity(), dist, state(1e4, 0.999, 4.0));
  const double lo = price(Payoff::identity(), dist, state(-1e4, 0.999, 4.0));
  EXPECT_NEAR(hi, 1.0, 1e-12);
  EXPECT_GE(lo, 0.0);
  EXPECT_LE(lo, 1e-6);
}

TEST(Price, ClampedBridgeIsFlagged) {
  const auto dist = MarketFactorDistribution::normal(0.0, 1.0);
  auto s = state(0.4, 1.0 - 1e-13, 1.0);
  EXPECT_TRUE(posterior(dist, s).clamped);
  EXPECT_NEAR(price(Payoff::identity(), dist, s), 0.4, 1e-6);
}

TEST(Price, DivergentTiltRaisesIntegrabilityError) {
  // At bridge 0 the kernel is e^{sigma xi x}; an Exp(1) prior cannot absorb xi >= 1.
  const auto dist = MarketFactorDistribution::exponential(1.0);
  EXPECT_THROW(posterior(dist, state(2.0, 0.0, 1.0)), IntegrabilityError);
  EXPECT_THROW(price(Payoff::exponential_scale(2.0), MarketFactorDistribution::exponential(1.0),
                     state(0.0, 0.0, 1.0)),
               IntegrabilityError);
}

TEST(PosteriorCdf, MonotoneAndConsistentWithDigital) {
  const auto dist = MarketFactorDistribution::recovery(0.4, 0.6, 0.0, 0.5, 1.0);
  const auto s = state(0.3, 0.4, 2.0, 0.02);
  double prev = 0.0;
  for (double k = -0.5; k <= 1.5; k += 0.05) {
    const double c = posterior_cdf(k, dist, s);
    EXPECT_GE(c, prev - 1e-15);
    prev = c;
  }
  EXPECT_EQ(posterior_cdf(-1.0, dist, s), 0.0);
  EXPECT_NEAR(posterior_cdf(2.0, dist, s), 1.0, 1e-14);
  EXPECT_NEAR(digital_price(0.25, dist, s), std::exp(0.02 * 0.4) * posterior_cdf(0.25, dist, s),
              1e-15);
  EXPECT_NEAR(price(Payoff::digital(0.25), dist, s) / s.discount(), posterior_cdf(0.25, dist, s),
              1e-13);
}

TEST(Price, CustomPayoffAgreesWithBuiltIns) {
  const auto dist = MarketFactorDistribution::normal(0.1, 0.8);
  const auto s = state(0.9, 0.6, 1.5, 0.01);
  const auto square = Payoff::custom([](double x) { return x * x; });
  const double mean = price(Payoff::identity(), dist, s) / s.discount();
  const double second = price(square, dist, s) / s.discount();
  // Gaussian posterior variance (1-b)/(1-b + nu^2 sigma^2 b) nu^2.
  const double d = 0.4 + 0.64 * 2.25 * 0.6;
  EXPECT_NEAR(second - mean * mean, 0.4 * 0.64 / d, 1e-10);
}

TEST(Posterior, JsonRecordShape) {
  const auto post = posterior(MarketFactorDistribution::binary(0.4, 0.6), state(0.5, 0.5, 1.0));
  const auto json = post.to_json();
  for (const char* key : {"\"Z\"", "\"log_Z\"", "\"atom_xs\"", "\"atom_masses\"", "\"node_xs\"",
                          "\"node_densities\"", "\"clamped\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(PricePath, TerminalNodeHoldsRealizedPayoff) {
  const auto grid = TimeGrid::make(1.0, 20);
  const ModelParams model{1.0, 50.0, 0.02, 1.0};
  const auto dist = MarketFactorDistribution::binary(0.4, 0.6);
  const auto bundle = simulate_paths(grid, model, dist, Seed{3}, 4);
  for (const auto& p : bundle.paths) {
    const auto prices = price_path(Payoff::identity(), dist, p, grid, model);
    ASSERT_EQ(prices.size(), grid.size());
    EXPECT_EQ(prices.back(), p.x_draw);
    EXPECT_NEAR(prices.front(), 0.6 * std::exp(-0.02), 1e-14);
  }
}

}  // namespace
}  // namespace vgip
