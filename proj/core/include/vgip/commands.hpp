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

// Library side of the `vgip` command-line tool: each subcommand is a plain
// function so it can be driven from tests without spawning a process.

#ifndef VGIP_COMMANDS_HPP_
#define VGIP_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vgip/scenario.hpp"
#include "vgip/stats_validation.hpp"

namespace vgip {

/// Environment variable that overrides output.directory.
inline constexpr const char* kOutDirEnv = "VGIP_OUT_DIR";

struct RunOptions {
  std::optional<std::uint64_t> seed;  ///< overrides simulation.seed
  unsigned threads = 1;
  bool force_general_kernel = false;
  std::optional<std::string> out_dir;  ///< overrides env and config
};

/// --out, then $VGIP_OUT_DIR, then output.directory.
std::filesystem::path resolve_output_dir(const ScenarioConfig& config, const RunOptions& options);

/// Writes <out>/paths.csv; returns the file path.
std::filesystem::path cmd_simulate(const ScenarioConfig& config, const RunOptions& options);

struct PriceRun {
  std::filesystem::path csv;
  std::string method;  ///< closed-form name or "general_kernel"
};

/// Writes <out>/prices.csv with columns path_id,k,t,info,bridge,price and,
/// when output.formats lists "posterior_json", <out>/posteriors.jsonl.
PriceRun cmd_price(const ScenarioConfig& config, const RunOptions& options);

enum class SweepAxis { kSigma, kM, kR };
SweepAxis parse_sweep_axis(const std::string& name);
const char* to_string(SweepAxis axis);

/// One price run per value with the shared seed; writes <out>/sweep.csv
/// with columns axis,value,path_id,k,t,info,bridge,price.
std::filesystem::path cmd_sweep(const ScenarioConfig& config, SweepAxis axis,
                                const std::vector<double>& values, const RunOptions& options);

/// Runs the verification suite at the requested level.
RunReport cmd_verify(const VerifySpec& spec, unsigned threads, std::uint64_t seed = 20240601);

}  // namespace vgip

#endif  // VGIP_COMMANDS_HPP_
