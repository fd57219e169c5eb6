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

// General information-based pricing: the posterior law of X_T given
// (xi_t, gamma_tT) and the discounted posterior expectation of h(X_T).
//
// The posterior tilts the prior by the Bayes factor
//
//   exp[(sigma xi x - sigma^2 x^2 b / 2) / (1 - b)],   b = gamma_tT,
//
// which is a Gaussian in x for b > 0.  All weights are handled in log space
// and normalized by log-sum-exp, so the divergence of the exponent as
// b -> 1 never overflows.  Atoms are summed exactly; every parametric
// continuous component is integrated with 256 Gauss-Legendre nodes placed on
// the window where its tilted log-density lies within kLogWindow nats of
// its maximum (the window is exact because that log-density is quadratic);
// tabulated components use the trapezoid rule on their own nodes.

#ifndef VGIP_PRICING_KERNEL_HPP_
#define VGIP_PRICING_KERNEL_HPP_

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "vgip/market.hpp"
#include "vgip/path_sim.hpp"

namespace vgip {

/// Width, in nats, of the quadrature window below the tilted maximum.
inline constexpr double kLogWindow = 60.0;

/// log of the Bayes reweighting factor; throws StateError if bridge >= 1.
double log_kernel(double x, const MarketState& state);

/// Posterior of X_T.  Atom masses and node masses together sum to one.
struct PosteriorDistribution {
  std::vector<double> atom_xs;
  std::vector<double> atom_masses;
  std::vector<double> node_xs;
  std::vector<double> node_masses;
  /// Posterior density at each node (node mass / quadrature weight).
  std::vector<double> node_densities;
  /// log Z, Z = int kernel(x) F(dx).
  double log_z = 0.0;
  /// True when the state's bridge was clamped to kBridgeCeiling.
  bool clamped = false;

  double z() const;
  double total_mass() const;
  /// Posterior expectation of h over atoms and nodes.
  double expect(const std::function<double(double)>& h) const;
  /// JSON record {Z, log_Z, atom_masses[], atom_xs[], node_xs[], node_densities[], clamped}.
  std::string to_json() const;
};

PosteriorDistribution posterior(const MarketFactorDistribution& dist, const MarketState& state);

/// e^{-r(T-t)} E[h(X_T) | xi_t, gamma_tT].
double price(const Payoff& payoff, const MarketFactorDistribution& dist, const MarketState& state);

/// P(X_T <= K | xi_t, gamma_tT).
double posterior_cdf(double strike, const MarketFactorDistribution& dist, const MarketState& state);

/// Price of H_T = e^{rT} 1{X_T <= K}, i.e. e^{rt} P(X_T <= K | state).
double digital_price(double strike, const MarketFactorDistribution& dist, const MarketState& state);

using StatePricer = std::function<double(const MarketState&)>;

/// Price S_{t_k} along one path for k < n; k = n holds h(x_draw).
std::vector<double> price_path(const StatePricer& pricer, const Payoff& payoff,
                               const SamplePath& path, const TimeGrid& grid,
                               const ModelParams& model);

/// price_path with the general kernel.
std::vector<double> price_path(const Payoff& payoff, const MarketFactorDistribution& dist,
                               const SamplePath& path, const TimeGrid& grid,
                               const ModelParams& model);

/// State at grid node k of `path`.
MarketState state_at(const SamplePath& path, const TimeGrid& grid, const ModelParams& model,
                     std::size_t k);

}  // namespace vgip

#endif  // VGIP_PRICING_KERNEL_HPP_
