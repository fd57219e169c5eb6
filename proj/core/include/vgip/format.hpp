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

#ifndef VGIP_FORMAT_HPP_
#define VGIP_FORMAT_HPP_

#include <string>

namespace vgip {

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

/// Appends format_double(x) to `out`.
void append_double(std::string& out, double x);

}  // namespace vgip

#endif  // VGIP_FORMAT_HPP_
