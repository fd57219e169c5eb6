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

// Statistical checks used by the verification suite: standard-error bands
// for moments, Pearson zero-correlation, one-sample Kolmogorov-Smirnov and
// martingale flatness of discounted price paths.  Standard errors always
// come from the sample itself.

#ifndef VGIP_STATS_VALIDATION_HPP_
#define VGIP_STATS_VALIDATION_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vgip/path_sim.hpp"

namespace vgip {

inline constexpr double kDefaultSigmaBand = 4.0;
inline constexpr double kKsCoefficient1Pct = 1.63;

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double mean_se = 0.0;
  double variance_se = 0.0;
};

/// Mean, unbiased variance and their standard errors.  The variance SE is
/// sqrt((m4 - s^4) / N) from the sample fourth central moment.
SampleSummary summarize(std::span<const double> sample);

/// pass iff |statistic - target| <= k * standard_error.
struct MomentCheck {
  std::string name;
  std::size_t n = 0;
  double statistic = 0.0;
  double target = 0.0;
  double standard_error = 0.0;
  double k = kDefaultSigmaBand;

  bool passed() const;
};

MomentCheck mean_check(std::string name, std::span<const double> sample, double target,
                       double k = kDefaultSigmaBand);
MomentCheck variance_check(std::string name, std::span<const double> sample, double target,
                           double k = kDefaultSigmaBand);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  bool passed = false;
};

/// sup_x |F_N(x) - F(x)|.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

/// One-sample KS test at the 1% level, critical value coefficient / sqrt(N).
/// Throws std::invalid_argument for N < 100.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf,
                 double coefficient = kKsCoefficient1Pct);

/// Beta(a, b) and Gamma(shape, scale) CDFs for use as KS targets.
double beta_cdf(double x, double a, double b);
double gamma_cdf(double x, double shape, double scale);

struct CorrelationResult {
  double r = 0.0;
  double bound = 0.0;
  bool passed = false;
};

double pearson(std::span<const double> x, std::span<const double> y);

/// pass iff |r| <= k / sqrt(N).  Requires equal lengths and N >= min_n;
/// zero-variance input throws std::invalid_argument.
CorrelationResult correlation_zero_test(std::span<const double> x, std::span<const double> y,
                                        double k = kDefaultSigmaBand, std::size_t min_n = 10000);

struct MartingaleResult {
  double reference = 0.0;  ///< mean of e^{-r t_0} S_{t_0}
  double worst_z = 0.0;    ///< max |mean_k - reference| / se_k over checked nodes
  std::size_t worst_node = 0;
  std::size_t nodes_checked = 0;
  bool passed = false;
};

/// price_paths[i][k] = S_{t_k} on path i.  Checks every `stride`-th node
/// (and the last) against the k = 0 mean: |mean_k - ref| <= k_band * se_k,
/// with an absolute floor of 1e-12 (1 + |ref|) for exactly flat nodes.
MartingaleResult martingale_flatness(const std::vector<std::vector<double>>& price_paths, double r,
                                     const TimeGrid& grid, std::size_t stride = 10,
                                     double k_band = kDefaultSigmaBand,
                                     std::size_t min_paths = 10000);

/// One entry of a verification run.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

struct RunReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(CheckResult result) { checks.push_back(std::move(result)); }
  /// One line per check: PASS/FAIL, name, statistic, tolerance, seconds.
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace vgip

#endif  // VGIP_STATS_VALIDATION_HPP_
