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

#include "vgip/path_sim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "vgip/errors.hpp"
#include "vgip/format.hpp"
#include "vgip/parallel.hpp"

namespace vgip {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sample_tabulated(const component::Tabulated& t, double u) {
  double mass = 0.0;
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const double x0 = t.nodes[i - 1];
    const double h = t.nodes[i] - x0;
    const double f0 = t.densities[i - 1];
    const double f1 = t.densities[i];
    const double seg = 0.5 * (f0 + f1) * h;
    if (mass + seg < u && i + 1 < t.nodes.size()) {
      mass += seg;
      continue;
    }
    // Solve f0 d + (f1 - f0) d^2 / (2h) = rem for d in [0, h].
    const double rem = std::min(u - mass, seg);
    const double slope = (f1 - f0) / h;
    double d;
    if (std::abs(slope) < 1e-14 * (f0 + f1 + 1.0)) {
      d = f0 > 0.0 ? rem / f0 : 0.5 * h;
    } else {
      const double disc = std::max(0.0, f0 * f0 + 2.0 * slope * rem);
      d = 2.0 * rem / (f0 + std::sqrt(disc));
    }
    return x0 + std::clamp(d, 0.0, h);
  }
  return t.nodes.back();
}

}  // namespace

TimeGrid TimeGrid::make(double T, std::size_t n_steps) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("model.T", "horizon must be positive");
  if (n_steps < 1) throw ConfigError("grid.n_steps", "must be >= 1");
  return TimeGrid(T, n_steps);
}

double TimeGrid::time(std::size_t k) const noexcept {
  if (k >= n_) return T_;
  return T_ * static_cast<double>(k) / static_cast<double>(n_);
}

std::vector<double> sample_gamma_path(const TimeGrid& grid, double m, Seed seed,
                                      std::uint64_t path) {
  if (!(m > 0.0)) throw DomainError("sample_gamma_path requires m > 0");
  Xoshiro256pp rng(seed, path, Stage::kGamma);
  GammaSampler gamma;
  const double shape = m * grid.dt();
  const double scale = 1.0 / m;
  std::vector<double> out(grid.size());
  out[0] = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double inc = std::max(gamma(rng, shape, scale), kMinGammaIncrement);
    out[k] = out[k - 1] + inc;
  }
  return out;
}

std::vector<double> bridge_from_gamma(std::span<const double> gamma) {
  if (gamma.size() < 2) throw SimulationError("gamma path needs at least two nodes");
  const double terminal = gamma.back();
  if (!(terminal > 0.0)) throw SimulationError("gamma path has zero terminal value");
  std::vector<double> out(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) out[k] = gamma[k] / terminal;
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

VgBridgeSample sample_vg_bridge(std::span<const double> gamma, std::span<const double> bridge,
                                Seed seed, std::uint64_t path) {
  if (gamma.size() != bridge.size() || gamma.size() < 2) {
    throw SimulationError("gamma and bridge arrays must be aligned");
  }
  Xoshiro256pp rng(seed, path, Stage::kGaussian);
  NormalSampler normal;
  VgBridgeSample out;
  const std::size_t n = gamma.size() - 1;
  out.w.resize(gamma.size());
  out.w[0] = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    out.w[k] = out.w[k - 1] + std::sqrt(gamma[k] - gamma[k - 1]) * normal(rng);
  }
  out.w_terminal = out.w[n];
  const double inv_sqrt_terminal = 1.0 / std::sqrt(gamma[n]);
  out.vgb.resize(gamma.size());
  for (std::size_t k = 0; k <= n; ++k) {
    out.vgb[k] = inv_sqrt_terminal * (out.w[k] - bridge[k] * out.w_terminal);
  }
  out.vgb[0] = 0.0;
  out.vgb[n] = 0.0;
  return out;
}

std::vector<double> sample_information_path(std::span<const double> vgb,
                                            std::span<const double> bridge, double sigma,
                                            double x) {
  if (vgb.size() != bridge.size()) throw SimulationError("vgb and bridge arrays must be aligned");
  std::vector<double> out(vgb.size());
  for (std::size_t k = 0; k < vgb.size(); ++k) out[k] = vgb[k] + sigma * bridge[k] * x;
  return out;
}

double sample_market_factor(const MarketFactorDistribution& dist, Seed seed, std::uint64_t path) {
  Xoshiro256pp rng(seed, path, Stage::kFactor);
  const auto& parts = dist.parts();
  const double pick = rng.uniform();
  std::size_t chosen = parts.size() - 1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    cumulative += parts[i].weight;
    if (pick < cumulative && parts[i].weight > 0.0) {
      chosen = i;
      break;
    }
  }
  while (parts[chosen].weight == 0.0 && chosen > 0) --chosen;
  NormalSampler normal;
  return std::visit(
      Overloaded{
          [](const component::Atom& a) { return a.x; },
          [&](const component::Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
          [&](const component::Normal& n) { return n.mu + n.nu * normal(rng); },
          [&](const component::Exponential& e) { return -std::log(rng.uniform()) / e.lambda; },
          [&](const component::Tabulated& t) { return sample_tabulated(t, rng.uniform()); },
      },
      parts[chosen].component);
}

SamplePath simulate_path(const TimeGrid& grid, const ModelParams& model,
                         const MarketFactorDistribution& dist, Seed seed, std::uint64_t path) {
  SamplePath out;
  out.id = path;
  out.x_draw = sample_market_factor(dist, seed, path);
  out.gamma = sample_gamma_path(grid, model.m, seed, path);
  out.bridge = bridge_from_gamma(out.gamma);
  auto vg = sample_vg_bridge(out.gamma, out.bridge, seed, path);
  out.w = std::move(vg.w);
  out.vgb = std::move(vg.vgb);
  out.info = sample_information_path(out.vgb, out.bridge, model.sigma, out.x_draw);
  out.info.back() = model.sigma * out.x_draw;
  return out;
}

PathBundle simulate_paths(const TimeGrid& grid, const ModelParams& model,
                          const MarketFactorDistribution& dist, Seed seed, std::size_t n_paths,
                          unsigned threads, std::uint64_t first_id) {
  PathBundle bundle{grid, std::vector<SamplePath>(n_paths)};
  parallel_for(n_paths, threads, [&](std::size_t i) {
    bundle.paths[i] = simulate_path(grid, model, dist, seed, first_id + i);
  });
  return bundle;
}

DecompositionResiduals decomposition_checks(const SamplePath& path, std::size_t s, std::size_t t,
                                            std::size_t u) {
  const std::size_t n = path.gamma.size() - 1;
  if (!(s <= t && t <= u && u <= n) || t == 0) {
    throw DomainError("decomposition_checks requires s <= t <= u <= n and t > 0");
  }
  const auto& g = path.gamma;
  const auto& w = path.w;
  // Sub-bridge Gamma_{ab} over [0, t_b] and gamma_{ab} = gamma_a / gamma_b.
  auto ratio = [&](std::size_t a, std::size_t b) { return g[a] / g[b]; };
  auto sub_bridge = [&](std::size_t a, std::size_t b) {
    return (w[a] - ratio(a, b) * w[b]) / std::sqrt(g[b]);
  };
  DecompositionResiduals out;
  out.vg_bridge = std::abs(sub_bridge(s, u) - std::sqrt(ratio(t, u)) * sub_bridge(s, t) -
                           ratio(s, t) * sub_bridge(t, u));
  out.information = std::abs(path.info[s] - sub_bridge(s, t) * std::sqrt(path.bridge[t]) -
                             path.info[t] * ratio(s, t));
  return out;
}

DecompositionResiduals decomposition_checks(const PathBundle& bundle, std::size_t path_index,
                                            std::size_t s, std::size_t t) {
  const auto& path = bundle.paths.at(path_index);
  return decomposition_checks(path, s, t, path.gamma.size() - 1);
}

void write_paths_csv(const PathBundle& bundle, std::ostream& out) {
  std::string line;
  out << "path_id,k,t,gamma,bridge,vgb,info,x_draw\n";
  for (const auto& p : bundle.paths) {
    for (std::size_t k = 0; k < p.gamma.size(); ++k) {
      line.clear();
      line += std::to_string(p.id);
      line += ',';
      line += std::to_string(k);
      line += ',';
      append_double(line, bundle.grid.time(k));
      for (double v : {p.gamma[k], p.bridge[k], p.vgb[k], p.info[k], p.x_draw}) {
        line += ',';
        append_double(line, v);
      }
      line += '\n';
      out << line;
    }
  }
}

}  // namespace vgip
