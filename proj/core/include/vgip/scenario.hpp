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

// Scenario configuration: a JSON document describing one experiment.
//
//   {
//     "model":      {"sigma": 1, "m": 100, "r": 0, "T": 1},
//     "grid":       {"n_steps": 500},
//     "factor":     {"components": [{"weight": 0.4, "type": "atom", "x": 0},
//                                   {"weight": 0.6, "type": "atom", "x": 1}]},
//     "payoff":     {"type": "identity"},
//     "simulation": {"n_paths": 15, "seed": 42},
//     "output":     {"directory": "out", "formats": ["csv"]},
//     "verify":     {"level": "quick", "sigma_band": 4, "ks_coefficient": 1.63}
//   }
//
// Component types: atom{x}, uniform{a,b}, normal{mu,nu}, exponential{lambda},
// tabulated{nodes[],densities[]}.  Payoff types: identity,
// exponential_scale{q}, digital{K}.  Every section except "factor" may be
// omitted and takes the defaults of ScenarioConfig.  Unknown keys are
// rejected.

#ifndef VGIP_SCENARIO_HPP_
#define VGIP_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vgip/market.hpp"
#include "vgip/path_sim.hpp"

namespace vgip {

enum class VerifyLevel { kQuick, kFull };

struct VerifySpec {
  VerifyLevel level = VerifyLevel::kQuick;
  double sigma_band = 4.0;
  double ks_coefficient = 1.63;
};

struct ScenarioConfig {
  ModelParams model;
  std::size_t n_steps = 500;
  MarketFactorDistribution factor = MarketFactorDistribution::binary(0.4, 0.6);
  Payoff payoff = Payoff::identity();
  std::size_t n_paths = 15;
  std::uint64_t seed = 0;
  std::string output_directory = "out";
  std::vector<std::string> output_formats{"csv"};
  VerifySpec verify;

  TimeGrid grid() const { return TimeGrid::make(model.T, n_steps); }
};

/// Parses and validates; throws ConfigError naming the offending field.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Canonical JSON (all sections, fixed key order, shortest round-trip
/// numbers).  parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ScenarioConfig& config);

/// Throws ConfigError if any field violates its invariant.
void validate(const ScenarioConfig& config);

const char* to_string(VerifyLevel level);
VerifyLevel parse_verify_level(const std::string& text);

}  // namespace vgip

#endif  // VGIP_SCENARIO_HPP_
