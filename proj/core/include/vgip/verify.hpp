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

// Verification suite behind `vgip verify`, plus the documented state grid on
// which closed forms are compared with the general kernel.

#ifndef VGIP_VERIFY_HPP_
#define VGIP_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vgip/market.hpp"
#include "vgip/scenario.hpp"
#include "vgip/stats_validation.hpp"

namespace vgip {

/// 100 states: xi in {-5, -2.5, 0, 2.5, 5} x bridge in {0.01, 0.25, 0.5,
/// 0.75, 0.99} x sigma in {1, 2, 3, 4}; T = 1, t = bridge, r = 0.03, m = 100.
std::vector<MarketState> oracle_state_grid();

/// max |a - b| / max(|a|, |b|), zero when both vanish.
double relative_difference(double a, double b);

struct OracleComparison {
  double max_rel_error = 0.0;
  std::size_t states = 0;
};

/// Compares each closed form with the general kernel on oracle_state_grid().
OracleComparison compare_binary_bond(double p0, double p1);
OracleComparison compare_recovery_bond(double p0, double p1, double a, double b, double c);
OracleComparison compare_power_payoff(double mu, double nu, double q);
OracleComparison compare_exponential(double lambda);

/// Path-count and sample-size choices per level.
struct VerifySizes {
  std::size_t moment_paths;
  std::size_t ks_paths;
  std::size_t correlation_paths;
  std::size_t martingale_paths;
  std::size_t terminal_paths;
};
VerifySizes verify_sizes(VerifyLevel level);

RunReport run_verification(const VerifySpec& spec, unsigned threads, std::uint64_t seed);

}  // namespace vgip

#endif  // VGIP_VERIFY_HPP_
