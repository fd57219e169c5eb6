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

// Domain types shared by the pricing engine, the closed forms and the
// simulator: the prior law of the market factor X_T, the conditioning
// market state (t, xi_t, gamma_tT) and the payoff h(X_T).

#ifndef VGIP_MARKET_HPP_
#define VGIP_MARKET_HPP_

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vgip {

namespace component {

struct Atom {
  double x;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Uniform on [a, b).
struct Uniform {
  double a;
  double b;

  friend bool operator==(const Uniform&, const Uniform&) = default;
};

struct Normal {
  double mu;
  double nu;

  friend bool operator==(const Normal&, const Normal&) = default;
};

/// Exponential with rate lambda on [0, inf).
struct Exponential {
  double lambda;

  friend bool operator==(const Exponential&, const Exponential&) = default;
};

/// Piecewise-linear density through (nodes[i], densities[i]), zero outside
/// [nodes.front(), nodes.back()].
struct Tabulated {
  std::vector<double> nodes;
  std::vector<double> densities;

  friend bool operator==(const Tabulated&, const Tabulated&) = default;
};

}  // namespace component

using Component = std::variant<component::Atom, component::Uniform, component::Normal,
                               component::Exponential, component::Tabulated>;

struct WeightedComponent {
  double weight;
  Component component;

  friend bool operator==(const WeightedComponent&, const WeightedComponent&) = default;
};

/// Mixture prior for X_T: weighted Dirac atoms plus continuous parts.
///
/// Invariants (checked by `make`): weights nonnegative and summing to one
/// within 1e-12, uniform a < b, normal nu > 0, exponential lambda > 0,
/// tabulated nodes strictly increasing with nonnegative densities whose
/// trapezoid integral is one within 1e-9.
class MarketFactorDistribution {
 public:
  static MarketFactorDistribution make(std::vector<WeightedComponent> parts);

  static MarketFactorDistribution atom(double x);
  /// P(X = 0) = p0, P(X = 1) = p1.
  static MarketFactorDistribution binary(double p0, double p1);
  /// Uniform(a, b) with weight p0 and an atom at c with weight p1.
  static MarketFactorDistribution recovery(double p0, double p1, double a, double b, double c);
  static MarketFactorDistribution normal(double mu, double nu);
  static MarketFactorDistribution exponential(double lambda);

  const std::vector<WeightedComponent>& parts() const noexcept { return parts_; }
  double mean() const;
  /// Prior CDF F_{X_T}(x).
  double cdf(double x) const;

  friend bool operator==(const MarketFactorDistribution&,
                         const MarketFactorDistribution&) = default;

 private:
  std::vector<WeightedComponent> parts_;
};

/// Conditioning state for pricing at time t.
struct MarketState {
  double t = 0.0;
  double T = 1.0;
  double xi = 0.0;      ///< information process value xi_t
  double bridge = 0.0;  ///< gamma bridge value gamma_tT
  double sigma = 1.0;   ///< information flow rate
  double r = 0.0;       ///< continuously compounded short rate
  double m = 1.0;       ///< subordinator shape parameter

  /// e^{-r (T - t)}.
  double discount() const;
};

/// Largest bridge value used for pricing; closer states are clamped.
inline constexpr double kBridgeCeiling = 1.0 - 1e-10;

/// Throws StateError unless 0 <= t < T, sigma > 0, 0 <= bridge <= 1 and all
/// fields are finite.
void validate(const MarketState& state);

struct NormalizedState {
  MarketState state;
  bool clamped = false;
};

/// Validates, then clamps bridge to kBridgeCeiling when 1 - bridge < 1e-10.
NormalizedState normalize(const MarketState& state);

/// Payoff H_T = h(X_T).
class Payoff {
 public:
  enum class Kind { kIdentity, kExponentialScale, kDigital, kCustom };

  static Payoff identity();
  /// h(x) = e^{q x}.  q = 0 is the unit payoff.
  static Payoff exponential_scale(double q);
  /// h(x) = 1{x <= K}.
  static Payoff digital(double strike);
  /// Caller-supplied h >= 0.
  static Payoff custom(std::function<double(double)> h, std::string name = "custom");

  Kind kind() const noexcept { return kind_; }
  /// q for exponential_scale, K for digital, 0 otherwise.
  double parameter() const noexcept { return parameter_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double x) const;

 private:
  Payoff(Kind kind, double parameter, std::string name)
      : kind_(kind), parameter_(parameter), name_(std::move(name)) {}

  Kind kind_;
  double parameter_;
  std::string name_;
  std::function<double(double)> fn_;
};

}  // namespace vgip

#endif  // VGIP_MARKET_HPP_
