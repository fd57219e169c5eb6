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

// Seedable simulation of gamma subordinator paths, gamma bridges,
// normalized variance-gamma bridges and information processes on a
// uniform time grid.
//
// Every path is a pure function of (master seed, path index): the gamma
// increments, Gaussian increments and the market-factor draw each come
// from their own counter-derived stream.

#ifndef VGIP_PATH_SIM_HPP_
#define VGIP_PATH_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vgip/market.hpp"
#include "vgip/random.hpp"

namespace vgip {

/// Uniform grid t_k = k T / n_steps, k = 0..n_steps.
class TimeGrid {
 public:
  static TimeGrid make(double T, std::size_t n_steps);

  double horizon() const noexcept { return T_; }
  std::size_t n_steps() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1; }
  double dt() const noexcept { return T_ / static_cast<double>(n_); }
  /// t_k, with t_0 = 0 and t_n = T exactly.
  double time(std::size_t k) const noexcept;

 private:
  TimeGrid(double T, std::size_t n) : T_(T), n_(n) {}
  double T_;
  std::size_t n_;
};

/// Model parameters shared by simulation and pricing.
struct ModelParams {
  double sigma = 1.0;
  double m = 100.0;
  double r = 0.0;
  double T = 1.0;
};

/// One simulated trajectory.  `w` holds the subordinated Brownian values
/// W_{gamma_{t_k}} the bridge is built from.
struct SamplePath {
  std::uint64_t id = 0;
  double x_draw = 0.0;
  std::vector<double> gamma;
  std::vector<double> w;
  std::vector<double> bridge;
  std::vector<double> vgb;
  std::vector<double> info;
};

struct PathBundle {
  TimeGrid grid;
  std::vector<SamplePath> paths;
};

/// Increments below this are clamped up to it so gamma_T > 0.
inline constexpr double kMinGammaIncrement = 1e-300;

/// Standard gamma subordinator (scale 1/m) sampled on the grid.
std::vector<double> sample_gamma_path(const TimeGrid& grid, double m, Seed seed,
                                      std::uint64_t path = 0);

/// gamma_k / gamma_n with exact endpoints 0 and 1.
std::vector<double> bridge_from_gamma(std::span<const double> gamma);

struct VgBridgeSample {
  std::vector<double> vgb;
  std::vector<double> w;  ///< W_{gamma_{t_k}}
  double w_terminal = 0.0;
};

/// Gamma_{t_k T} = gamma_T^{-1/2} (W_{gamma_t} - gamma_{tT} W_{gamma_T}),
/// with vgb[0] = vgb[n] = 0 exactly.
VgBridgeSample sample_vg_bridge(std::span<const double> gamma, std::span<const double> bridge,
                                Seed seed, std::uint64_t path = 0);

/// xi_k = vgb[k] + sigma bridge[k] x.
std::vector<double> sample_information_path(std::span<const double> vgb,
                                            std::span<const double> bridge, double sigma, double x);

/// One draw from the mixture prior on the factor stream of `path`.
double sample_market_factor(const MarketFactorDistribution& dist, Seed seed,
                            std::uint64_t path = 0);

/// Full five-stage path: factor, gamma path, bridge, VG bridge, information.
SamplePath simulate_path(const TimeGrid& grid, const ModelParams& model,
                         const MarketFactorDistribution& dist, Seed seed, std::uint64_t path);

/// Paths first_id .. first_id + n_paths - 1, independent of `threads`.
PathBundle simulate_paths(const TimeGrid& grid, const ModelParams& model,
                          const MarketFactorDistribution& dist, Seed seed, std::size_t n_paths,
                          unsigned threads = 1, std::uint64_t first_id = 0);

struct DecompositionResiduals {
  double vg_bridge = 0.0;    ///< |Gamma_su - sqrt(gamma_tu) Gamma_st - gamma_st Gamma_tu|
  double information = 0.0;  ///< |xi_s - Gamma_st sqrt(gamma_tT) - xi_t gamma_st|
};

/// Residuals of the bridge decomposition on grid nodes s <= t <= u
/// (u defaults to n) and of the information identity on (s, t).  Sub-bridges
/// are rebuilt from the stored gamma and W values.  Requires t > 0.
DecompositionResiduals decomposition_checks(const SamplePath& path, std::size_t s, std::size_t t,
                                            std::size_t u);
DecompositionResiduals decomposition_checks(const PathBundle& bundle, std::size_t path_index,
                                            std::size_t s, std::size_t t);

/// CSV with header `path_id,k,t,gamma,bridge,vgb,info,x_draw`, shortest
/// round-trip decimals.
void write_paths_csv(const PathBundle& bundle, std::ostream& out);

}  // namespace vgip

#endif  // VGIP_PATH_SIM_HPP_
