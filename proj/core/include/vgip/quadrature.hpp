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

#ifndef VGIP_QUADRATURE_HPP_
#define VGIP_QUADRATURE_HPP_

#include <cstddef>
#include <vector>

namespace vgip {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Builds an n-point rule by Newton iteration on P_n.
GaussLegendreRule make_gauss_legendre(std::size_t n);

/// Number of nodes used per continuous prior component.
inline constexpr std::size_t kPosteriorNodes = 256;

/// Shared, lazily built 256-point rule.
const GaussLegendreRule& gauss_legendre_256();

}  // namespace vgip

#endif  // VGIP_QUADRATURE_HPP_
