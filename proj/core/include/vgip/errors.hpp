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

#ifndef VGIP_ERRORS_HPP_
#define VGIP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vgip {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A MarketState that cannot be priced (e.g. bridge at or above one).
class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every posterior weight underflowed; carries the largest log-kernel seen.
class UnderflowError : public std::runtime_error {
 public:
  UnderflowError(const std::string& what, double max_log_kernel)
      : std::runtime_error(what), max_log_kernel_(max_log_kernel) {}
  double max_log_kernel() const noexcept { return max_log_kernel_; }

 private:
  double max_log_kernel_;
};

/// Payoff not integrable against the (tilted) prior.
class IntegrabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid scenario configuration. `field` is the dotted path of the
/// offending entry, e.g. "model.sigma".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace vgip

#endif  // VGIP_ERRORS_HPP_
