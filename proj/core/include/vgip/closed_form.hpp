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

// Analytic prices for the four canonical priors: binary default bond,
// defaultable bond with uniform recovery, log-normal asset (and its power
// payoff), and exponentially distributed payoff.  Each agrees with the
// general kernel in pricing_kernel.hpp, which the tests use as the oracle.
//
// The textbook forms divide by gamma_tT and subtract nearly equal terms
// when the posterior mode lies far outside the support.  Every function
// here is evaluated in a form that stays finite and accurate down to
// gamma_tT = 0 instead; none of them calls the general kernel.

#ifndef VGIP_CLOSED_FORM_HPP_
#define VGIP_CLOSED_FORM_HPP_

#include <optional>
#include <string>

#include "vgip/market.hpp"
#include "vgip/pricing_kernel.hpp"

namespace vgip {

/// P(X_T = 0) = p0, P(X_T = 1) = p1.
struct BinaryBondSpec {
  double p0;
  double p1;

  static BinaryBondSpec make(double p0, double p1);
};

/// X_T ~ Uniform(a, b) with probability p0, X_T = c with probability p1,
/// 0 <= a < b <= c.
struct RecoveryBondSpec {
  double p0;
  double p1;
  double a;
  double b;
  double c;

  static RecoveryBondSpec make(double p0, double p1, double a, double b, double c);
};

/// X_T ~ Normal(mu, nu^2); payoff e^{q X_T}.
struct LogNormalSpec {
  double mu;
  double nu;
  double q = 1.0;

  static LogNormalSpec make(double mu, double nu, double q = 1.0);
};

/// X_T ~ Exp(lambda).
struct ExponentialSpec {
  double lambda;

  static ExponentialSpec make(double lambda);
};

/// e^{-r(T-t)} p1 e^A / (p0 + p1 e^A), A = (sigma xi - sigma^2 b / 2) / (1 - b),
/// evaluated as a logistic function of log(p1/p0) + A.
double binary_bond_price(const BinaryBondSpec& spec, const MarketState& state);

/// Uniform-recovery bond.  With mu_hat = xi / (sigma b) and
/// nu_hat = sqrt((1 - b) / b) / sigma the posterior is the prior reweighted
/// by a Normal(mu_hat, nu_hat^2) density; the price is the mixture of the
/// truncated-normal mean on [a, b] (weight p0 / (b - a) times its Gaussian
/// mass) and c (weight p1 f(c)), combined in log space.  The truncated
/// moments are computed from the log-kernel's quadratic coefficients on
/// [a, b]: Taylor series when the band is nearly flat, the Laplace continued
/// fraction when it decays steeply, the Gaussian CDF form otherwise.
double recovery_bond_price(const RecoveryBondSpec& spec, const MarketState& state);

/// log I_t(q) with I_t(q) = (1 / (nu sqrt(A_t))) exp(B_t^2 / (2 A_t) - C).
double log_gaussian_tilt_integral(double q, const LogNormalSpec& spec, const MarketState& state);
double gaussian_tilt_integral(double q, const LogNormalSpec& spec, const MarketState& state);

/// Log-normal asset, q = 1, in the K-form
///   S_t = e^{rt} S_0 exp[K (xi / (sigma b) - mu - nu^2 / 2)],
///   K = nu^2 sigma^2 b / (1 - b + nu^2 sigma^2 b).
/// spec.q is ignored.
double lognormal_price(const LogNormalSpec& spec, const MarketState& state);

/// Same price as e^{-r(T-t)} I_t(1) / I_t(0).
double lognormal_price_tilt_ratio(const LogNormalSpec& spec, const MarketState& state);

/// Power payoff e^{q X_T}: C_t = e^{rt} C_0 exp[K (q xi / (sigma b) - q mu - q^2 nu^2 / 2)].
double power_payoff_price(const LogNormalSpec& spec, const MarketState& state);

/// e^{-r(T-t)} I_t(q) / I_t(0).
double power_payoff_price_tilt_ratio(const LogNormalSpec& spec, const MarketState& state);

/// Exponential prior, identity payoff:
///   S_t = e^{-r(T-t)} (mu_hat - N1(0, mu_hat, nu)) / (1 - N0(0, mu_hat, nu)),
///   mu_hat = xi / (sigma b) - lambda (1 - b) / (sigma^2 b).
/// The discount factor is applied as for every other price; the printed
/// form of this result usually omits it.  When the mode lies below
/// -2 nu_hat the mean is taken from the Laplace continued fraction to
/// avoid cancellation in mu_hat + nu_hat H(.).
double exponential_payoff_price(const ExponentialSpec& spec, const MarketState& state);

struct ClosedFormPricer {
  std::string name;
  StatePricer price;
};

/// Closed-form pricer when (dist, payoff) is one of the canonical pairs.
std::optional<ClosedFormPricer> match_closed_form(const MarketFactorDistribution& dist,
                                                  const Payoff& payoff);

}  // namespace vgip

#endif  // VGIP_CLOSED_FORM_HPP_
