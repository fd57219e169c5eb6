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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vgip/errors.hpp"
#include "vgip/format.hpp"
#include "vgip/quadrature.hpp"

namespace vgip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Item {
  double x;
  double log_mass;
  double quad_weight;  // 0 for atoms
  bool interior_edge;  // window cut inside the component's support
};

// Prior log-density -alpha x^2 / 2 + beta x + c0 on [lo, hi].
struct QuadraticLogDensity {
  double alpha;
  double beta;
  double c0;
  double lo;
  double hi;
};

double kernel_quadratic(const MarketState& s) {
  return s.sigma * s.sigma * s.bridge / (1.0 - s.bridge);
}

double kernel_linear(const MarketState& s) { return s.sigma * s.xi / (1.0 - s.bridge); }

void add_parametric(std::vector<Item>& items, const QuadraticLogDensity& prior,
                    const MarketState& s, double q, double clip_hi) {
  const double A = prior.alpha + kernel_quadratic(s);
  const double B = prior.beta + kernel_linear(s) + q;
  const double L = prior.lo;
  const double U = prior.hi;
  double lo;
  double hi;
  if (A > 0.0) {
    // Offsets d from the (clamped) peak p solving g(p) - g(p + d) = W are the
    // roots of A d^2 / 2 - g'(p) d - W = 0; pick the cancellation-free form.
    const double peak = std::clamp(B / A, L, U);
    const double slope = B - A * peak;
    const double root = std::sqrt(slope * slope + 2.0 * A * kLogWindow);
    double up;
    double down;
    if (slope >= 0.0) {
      up = (slope + root) / A;
      down = -2.0 * kLogWindow / (slope + root);
    } else {
      down = (slope - root) / A;
      up = 2.0 * kLogWindow / (root - slope);
    }
    lo = std::max(L, peak + down);
    hi = std::min(U, peak + up);
  } else if (B > 0.0) {
    if (!std::isfinite(U)) throw IntegrabilityError("tilted prior mass diverges at +inf");
    hi = U;
    lo = std::max(L, U - kLogWindow / B);
  } else if (B < 0.0) {
    if (!std::isfinite(L)) throw IntegrabilityError("tilted prior mass diverges at -inf");
    lo = L;
    hi = std::min(U, L - kLogWindow / B);
  } else {
    if (!std::isfinite(L) || !std::isfinite(U)) {
      throw IntegrabilityError("flat tilted density on an unbounded support");
    }
    lo = L;
    hi = U;
  }
  const bool lo_interior = lo > L;
  const bool hi_interior = hi < U;
  hi = std::min(hi, clip_hi);
  if (!(hi > lo)) return;

  const GaussLegendreRule& rule = gauss_legendre_256();
  const double mid = 0.5 * (lo + hi);
  const double half_width = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = mid + half_width * rule.nodes[i];
    const double w = rule.weights[i] * half_width;
    const double log_mass = prior.c0 + x * (B - 0.5 * A * x) + std::log(w);
    const bool edge = (i == 0 && lo_interior) || (i + 1 == rule.size() && hi_interior);
    items.push_back({x, log_mass, w, edge});
  }
}

void add_tabulated(std::vector<Item>& items, double weight, const component::Tabulated& t,
                   const MarketState& s, double q, double clip_hi) {
  std::vector<double> xs;
  std::vector<double> fs;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i] <= clip_hi) {
      xs.push_back(t.nodes[i]);
      fs.push_back(t.densities[i]);
      continue;
    }
    if (i > 0 && clip_hi > t.nodes[i - 1]) {
      const double frac = (clip_hi - t.nodes[i - 1]) / (t.nodes[i] - t.nodes[i - 1]);
      xs.push_back(clip_hi);
      fs.push_back(t.densities[i - 1] + frac * (t.densities[i] - t.densities[i - 1]));
    }
    break;
  }
  if (xs.size() < 2) return;
  const double log_w = std::log(weight);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double left = i > 0 ? xs[i] - xs[i - 1] : 0.0;
    const double right = i + 1 < xs.size() ? xs[i + 1] - xs[i] : 0.0;
    const double qw = 0.5 * (left + right);
    const double log_mass =
        log_w + std::log(fs[i]) + log_kernel(xs[i], s) + q * xs[i] + std::log(qw);
    items.push_back({xs[i], log_mass, qw, false});
  }
}

// Weighted points whose masses integrate e^{q x} * kernel against the prior
// restricted to x <= clip_hi.  `s` must already be normalized.
std::vector<Item> tilted_items(const MarketFactorDistribution& dist, const MarketState& s, double q,
                               double clip_hi) {
  std::vector<Item> items;
  for (const auto& [weight, comp] : dist.parts()) {
    if (weight == 0.0) continue;
    const double log_w = std::log(weight);
    std::visit(
        Overloaded{
            [&](const component::Atom& a) {
              if (a.x <= clip_hi) {
                items.push_back({a.x, log_w + log_kernel(a.x, s) + q * a.x, 0.0, false});
              }
            },
            [&](const component::Uniform& u) {
              add_parametric(items, {0.0, 0.0, log_w - std::log(u.b - u.a), u.a, u.b}, s, q,
                             clip_hi);
            },
            [&](const component::Normal& n) {
              const double inv_var = 1.0 / (n.nu * n.nu);
              const double c0 = log_w - std::log(n.nu) - 0.5 * std::log(2.0 * std::numbers::pi) -
                                0.5 * n.mu * n.mu * inv_var;
              add_parametric(items, {inv_var, n.mu * inv_var, c0, -kInf, kInf}, s, q, clip_hi);
            },
            [&](const component::Exponential& e) {
              add_parametric(items, {0.0, -e.lambda, log_w + std::log(e.lambda), 0.0, kInf}, s, q,
                             clip_hi);
            },
            [&](const component::Tabulated& t) { add_tabulated(items, weight, t, s, q, clip_hi); },
        },
        comp);
  }
  return items;
}

double max_log_mass(const std::vector<Item>& items) {
  double out = -kInf;
  for (const auto& it : items) {
    if (std::isnan(it.log_mass)) return it.log_mass;
    out = std::max(out, it.log_mass);
  }
  return out;
}

double log_sum_exp(const std::vector<Item>& items) {
  const double top = max_log_mass(items);
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (const auto& it : items) sum += std::exp(it.log_mass - top);
  return top + std::log(sum);
}

double max_abs_log_kernel(const MarketFactorDistribution& dist, const MarketState& s) {
  // Diagnostic only: the kernel at the prior's representative points.
  double out = -kInf;
  for (const auto& part : dist.parts()) {
    const double x = std::visit(Overloaded{
                                    [](const component::Atom& a) { return a.x; },
                                    [](const component::Uniform& u) { return u.a; },
                                    [](const component::Normal& n) { return n.mu; },
                                    [](const component::Exponential&) { return 0.0; },
                                    [](const component::Tabulated& t) { return t.nodes.front(); },
                                },
                                part.component);
    out = std::max(out, log_kernel(x, s));
  }
  return out;
}

}  // namespace

double log_kernel(double x, const MarketState& state) {
  if (!(state.bridge < 1.0)) throw StateError("log_kernel requires bridge < 1");
  const double b = state.bridge;
  const double sx = state.sigma * x;
  return (sx * state.xi - 0.5 * sx * sx * b) / (1.0 - b);
}

double PosteriorDistribution::z() const { return std::exp(log_z); }

double PosteriorDistribution::total_mass() const {
  double total = 0.0;
  for (double m : atom_masses) total += m;
  for (double m : node_masses) total += m;
  return total;
}

double PosteriorDistribution::expect(const std::function<double(double)>& h) const {
  double out = 0.0;
  for (std::size_t i = 0; i < atom_xs.size(); ++i) out += atom_masses[i] * h(atom_xs[i]);
  for (std::size_t i = 0; i < node_xs.size(); ++i) out += node_masses[i] * h(node_xs[i]);
  return out;
}

std::string PosteriorDistribution::to_json() const {
  std::string out = "{\"Z\":";
  const double zv = z();
  if (std::isfinite(zv)) {
    append_double(out, zv);
  } else {
    out += "null";
  }
  out += ",\"log_Z\":";
  append_double(out, log_z);
  auto array = [&out](const char* key, const std::vector<double>& v) {
    out += ",\"";
    out += key;
    out += "\":[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      append_double(out, v[i]);
    }
    out += ']';
  };
  array("atom_xs", atom_xs);
  array("atom_masses", atom_masses);
  array("node_xs", node_xs);
  array("node_densities", node_densities);
  out += ",\"clamped\":";
  out += clamped ? "true" : "false";
  out += '}';
  return out;
}

PosteriorDistribution posterior(const MarketFactorDistribution& dist, const MarketState& state) {
  const NormalizedState ns = normalize(state);
  const auto items = tilted_items(dist, ns.state, 0.0, kInf);
  const double top = max_log_mass(items);
  if (!std::isfinite(top)) {
    throw UnderflowError("posterior mass is not representable (max log-kernel " +
                             format_double(max_abs_log_kernel(dist, ns.state)) + ")",
                         max_abs_log_kernel(dist, ns.state));
  }
  double sum = 0.0;
  for (const auto& it : items) sum += std::exp(it.log_mass - top);

  PosteriorDistribution out;
  out.log_z = top + std::log(sum);
  out.clamped = ns.clamped;
  for (const auto& it : items) {
    const double mass = std::exp(it.log_mass - top) / sum;
    if (it.quad_weight == 0.0) {
      out.atom_xs.push_back(it.x);
      out.atom_masses.push_back(mass);
    } else {
      out.node_xs.push_back(it.x);
      out.node_masses.push_back(mass);
      out.node_densities.push_back(mass / it.quad_weight);
    }
  }
  return out;
}

double posterior_cdf(double strike, const MarketFactorDistribution& dist,
                     const MarketState& state) {
  const NormalizedState ns = normalize(state);
  const double total = log_sum_exp(tilted_items(dist, ns.state, 0.0, kInf));
  if (!std::isfinite(total)) {
    throw UnderflowError("posterior mass is not representable", max_abs_log_kernel(dist, ns.state));
  }
  const double below = log_sum_exp(tilted_items(dist, ns.state, 0.0, strike));
  if (below == -kInf) return 0.0;
  return std::min(1.0, std::exp(below - total));
}

double digital_price(double strike, const MarketFactorDistribution& dist,
                     const MarketState& state) {
  return std::exp(state.r * state.t) * posterior_cdf(strike, dist, state);
}

double price(const Payoff& payoff, const MarketFactorDistribution& dist, const MarketState& state) {
  const NormalizedState ns = normalize(state);
  const double discount = ns.state.discount();
  switch (payoff.kind()) {
    case Payoff::Kind::kDigital:
      return discount * posterior_cdf(payoff.parameter(), dist, ns.state);
    case Payoff::Kind::kExponentialScale: {
      const double q = payoff.parameter();
      const double base = log_sum_exp(tilted_items(dist, ns.state, 0.0, kInf));
      if (!std::isfinite(base)) {
        throw UnderflowError("posterior mass is not representable",
                             max_abs_log_kernel(dist, ns.state));
      }
      if (q == 0.0) return discount;
      const double tilted = log_sum_exp(tilted_items(dist, ns.state, q, kInf));
      if (std::isnan(tilted) || tilted == kInf) {
        throw IntegrabilityError("e^{qx} payoff integral diverges");
      }
      return discount * std::exp(tilted - base);
    }
    case Payoff::Kind::kIdentity:
      return discount * posterior(dist, ns.state).expect([](double x) { return x; });
    case Payoff::Kind::kCustom: {
      const auto items = tilted_items(dist, ns.state, 0.0, kInf);
      const double top = max_log_mass(items);
      if (!std::isfinite(top)) {
        throw UnderflowError("posterior mass is not representable",
                             max_abs_log_kernel(dist, ns.state));
      }
      double sum = 0.0;
      double value = 0.0;
      double edge = 0.0;
      for (const auto& it : items) {
        const double w = std::exp(it.log_mass - top);
        const double term = w * payoff(it.x);
        sum += w;
        value += term;
        if (it.interior_edge) edge = std::max(edge, std::abs(term));
      }
      if (!std::isfinite(value) || (edge > 1e-10 * std::abs(value) && edge > 0.0)) {
        throw IntegrabilityError("payoff " + payoff.name() +
                                 " is not integrable against the posterior");
      }
      return discount * value / sum;
    }
  }
  return 0.0;
}

MarketState state_at(const SamplePath& path, const TimeGrid& grid, const ModelParams& model,
                     std::size_t k) {
  MarketState s;
  s.t = grid.time(k);
  s.T = grid.horizon();
  s.xi = path.info[k];
  s.bridge = path.bridge[k];
  s.sigma = model.sigma;
  s.r = model.r;
  s.m = model.m;
  return s;
}

std::vector<double> price_path(const StatePricer& pricer, const Payoff& payoff,
                               const SamplePath& path, const TimeGrid& grid,
                               const ModelParams& model) {
  const std::size_t n = grid.n_steps();
  if (path.info.size() != grid.size() || path.bridge.size() != grid.size()) {
    throw SimulationError("path does not match the time grid");
  }
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < n; ++k) out[k] = pricer(state_at(path, grid, model, k));
  out[n] = payoff(path.x_draw);
  return out;
}

std::vector<double> price_path(const Payoff& payoff, const MarketFactorDistribution& dist,
                               const SamplePath& path, const TimeGrid& grid,
                               const ModelParams& model) {
  return price_path([&](const MarketState& s) { return price(payoff, dist, s); }, payoff, path,
                    grid, model);
}

}  // namespace vgip
