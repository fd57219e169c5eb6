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

#include "vgip/market.hpp"

#include <cmath>
#include <string>

#include "vgip/errors.hpp"
#include "vgip/special_math.hpp"

namespace vgip {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_component(const Component& c, std::size_t index) {
  const std::string where = "factor.components[" + std::to_string(index) + "]";
  std::visit(
      Overloaded{
          [&](const component::Atom& a) {
            if (!std::isfinite(a.x)) throw ConfigError(where + ".x", "atom must be finite");
          },
          [&](const component::Uniform& u) {
            if (!std::isfinite(u.a) || !std::isfinite(u.b) || !(u.a < u.b)) {
              throw ConfigError(where, "uniform requires finite a < b");
            }
          },
          [&](const component::Normal& n) {
            if (!std::isfinite(n.mu)) throw ConfigError(where + ".mu", "must be finite");
            if (!(n.nu > 0.0) || !std::isfinite(n.nu)) {
              throw ConfigError(where + ".nu", "must be positive");
            }
          },
          [&](const component::Exponential& e) {
            if (!(e.lambda > 0.0) || !std::isfinite(e.lambda)) {
              throw ConfigError(where + ".lambda", "must be positive");
            }
          },
          [&](const component::Tabulated& t) {
            if (t.nodes.size() < 2 || t.nodes.size() != t.densities.size()) {
              throw ConfigError(where, "tabulated needs >= 2 nodes and one density per node");
            }
            double mass = 0.0;
            for (std::size_t i = 0; i < t.nodes.size(); ++i) {
              if (!std::isfinite(t.nodes[i]) || !std::isfinite(t.densities[i]) ||
                  t.densities[i] < 0.0) {
                throw ConfigError(where, "nodes and densities must be finite, densities >= 0");
              }
              if (i > 0) {
                if (!(t.nodes[i] > t.nodes[i - 1])) {
                  throw ConfigError(where + ".nodes", "must be strictly increasing");
                }
                mass += 0.5 * (t.densities[i] + t.densities[i - 1]) * (t.nodes[i] - t.nodes[i - 1]);
              }
            }
            if (std::abs(mass - 1.0) > 1e-9) {
              throw ConfigError(where + ".densities", "trapezoid integral must be 1 within 1e-9");
            }
          },
      },
      c);
}

double tabulated_cdf(const component::Tabulated& t, double x) {
  if (x <= t.nodes.front()) return 0.0;
  double mass = 0.0;
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const double x0 = t.nodes[i - 1];
    const double x1 = t.nodes[i];
    const double f0 = t.densities[i - 1];
    const double f1 = t.densities[i];
    if (x >= x1) {
      mass += 0.5 * (f0 + f1) * (x1 - x0);
      continue;
    }
    const double fx = f0 + (f1 - f0) * (x - x0) / (x1 - x0);
    return mass + 0.5 * (f0 + fx) * (x - x0);
  }
  return mass;
}

}  // namespace

MarketFactorDistribution MarketFactorDistribution::make(std::vector<WeightedComponent> parts) {
  if (parts.empty()) throw ConfigError("factor.components", "at least one component required");
  double total = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double w = parts[i].weight;
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ConfigError("factor.components[" + std::to_string(i) + "].weight",
                        "must be a probability");
    }
    total += w;
    check_component(parts[i].component, i);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("factor.components", "weights must sum to 1 within 1e-12");
  }
  MarketFactorDistribution out;
  out.parts_ = std::move(parts);
  return out;
}

MarketFactorDistribution MarketFactorDistribution::atom(double x) {
  return make({{1.0, component::Atom{x}}});
}

MarketFactorDistribution MarketFactorDistribution::binary(double p0, double p1) {
  return make({{p0, component::Atom{0.0}}, {p1, component::Atom{1.0}}});
}

MarketFactorDistribution MarketFactorDistribution::recovery(double p0, double p1, double a,
                                                            double b, double c) {
  return make({{p0, component::Uniform{a, b}}, {p1, component::Atom{c}}});
}

MarketFactorDistribution MarketFactorDistribution::normal(double mu, double nu) {
  return make({{1.0, component::Normal{mu, nu}}});
}

MarketFactorDistribution MarketFactorDistribution::exponential(double lambda) {
  return make({{1.0, component::Exponential{lambda}}});
}

double MarketFactorDistribution::mean() const {
  double out = 0.0;
  for (const auto& [w, c] : parts_) {
    out += w * std::visit(Overloaded{
                              [](const component::Atom& a) { return a.x; },
                              [](const component::Uniform& u) { return 0.5 * (u.a + u.b); },
                              [](const component::Normal& n) { return n.mu; },
                              [](const component::Exponential& e) { return 1.0 / e.lambda; },
                              [](const component::Tabulated& t) {
                                double m = 0.0;
                                for (std::size_t i = 1; i < t.nodes.size(); ++i) {
                                  // Exact first moment of the linear segment.
                                  const double x0 = t.nodes[i - 1], x1 = t.nodes[i];
                                  const double f0 = t.densities[i - 1], f1 = t.densities[i];
                                  const double h = x1 - x0;
                                  m += h * (f0 * (2.0 * x0 + x1) + f1 * (x0 + 2.0 * x1)) / 6.0;
                                }
                                return m;
                              },
                          },
                          c);
  }
  return out;
}

double MarketFactorDistribution::cdf(double x) const {
  double out = 0.0;
  for (const auto& [w, c] : parts_) {
    out += w *
           std::visit(Overloaded{
                          [x](const component::Atom& a) { return x >= a.x ? 1.0 : 0.0; },
                          [x](const component::Uniform& u) {
                            if (x <= u.a) return 0.0;
                            if (x >= u.b) return 1.0;
                            return (x - u.a) / (u.b - u.a);
                          },
                          [x](const component::Normal& n) { return normal_cdf((x - n.mu) / n.nu); },
                          [x](const component::Exponential& e) {
                            return x <= 0.0 ? 0.0 : -std::expm1(-e.lambda * x);
                          },
                          [x](const component::Tabulated& t) { return tabulated_cdf(t, x); },
                      },
                      c);
  }
  return out;
}

double MarketState::discount() const { return std::exp(-r * (T - t)); }

void validate(const MarketState& s) {
  if (!std::isfinite(s.t) || !std::isfinite(s.T) || !std::isfinite(s.xi) ||
      !std::isfinite(s.bridge) || !std::isfinite(s.sigma) || !std::isfinite(s.r) ||
      !std::isfinite(s.m)) {
    throw StateError("market state fields must be finite");
  }
  if (!(s.t >= 0.0) || !(s.t < s.T)) throw StateError("market state requires 0 <= t < T");
  if (!(s.sigma > 0.0)) throw StateError("market state requires sigma > 0");
  if (!(s.m > 0.0)) throw StateError("market state requires m > 0");
  if (!(s.bridge >= 0.0) || !(s.bridge <= 1.0)) {
    throw StateError("market state requires 0 <= bridge <= 1");
  }
}

NormalizedState normalize(const MarketState& state) {
  validate(state);
  NormalizedState out{state, false};
  if (1.0 - state.bridge < 1e-10) {
    out.state.bridge = kBridgeCeiling;
    out.clamped = true;
  }
  return out;
}

Payoff Payoff::identity() { return Payoff(Kind::kIdentity, 0.0, "identity"); }

Payoff Payoff::exponential_scale(double q) {
  if (!std::isfinite(q)) throw ConfigError("payoff.q", "must be finite");
  return Payoff(Kind::kExponentialScale, q, "exponential_scale");
}

Payoff Payoff::digital(double strike) {
  if (std::isnan(strike)) throw ConfigError("payoff.K", "must not be NaN");
  return Payoff(Kind::kDigital, strike, "digital");
}

Payoff Payoff::custom(std::function<double(double)> h, std::string name) {
  if (!h) throw ConfigError("payoff", "custom payoff needs a callable");
  Payoff p(Kind::kCustom, 0.0, std::move(name));
  p.fn_ = std::move(h);
  return p;
}

double Payoff::operator()(double x) const {
  switch (kind_) {
    case Kind::kIdentity: return x;
    case Kind::kExponentialScale: return std::exp(parameter_ * x);
    case Kind::kDigital: return x <= parameter_ ? 1.0 : 0.0;
    case Kind::kCustom: return fn_(x);
  }
  return 0.0;
}

}  // namespace vgip
