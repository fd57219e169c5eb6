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

#include "vgip/stats_validation.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vgip/format.hpp"

namespace vgip {

SampleSummary summarize(std::span<const double> sample) {
  SampleSummary s;
  s.n = sample.size();
  if (s.n < 2) throw std::invalid_argument("summarize needs at least two values");
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double v : sample) sum += v;
  s.mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : sample) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  s.variance = m2 / (n - 1.0);
  s.mean_se = std::sqrt(s.variance / n);
  const double pop_var = m2 / n;
  s.variance_se = std::sqrt(std::max(0.0, m4 / n - pop_var * pop_var) / n);
  return s;
}

bool MomentCheck::passed() const { return std::abs(statistic - target) <= k * standard_error; }

MomentCheck mean_check(std::string name, std::span<const double> sample, double target, double k) {
  const auto s = summarize(sample);
  return {std::move(name), s.n, s.mean, target, s.mean_se, k};
}

MomentCheck variance_check(std::string name, std::span<const double> sample, double target,
                           double k) {
  const auto s = summarize(sample);
  return {std::move(name), s.n, s.variance, target, s.variance_se, k};
}

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - f, f - di / n});
  }
  return d;
}

KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf,
                 double coefficient) {
  if (sample.size() < 100) throw std::invalid_argument("ks_test needs N >= 100");
  if (!(coefficient > 0.0)) throw std::invalid_argument("KS coefficient must be positive");
  KsResult out;
  out.statistic = ks_statistic(sample, cdf);
  out.critical = coefficient / std::sqrt(static_cast<double>(sample.size()));
  out.passed = out.statistic <= out.critical;
  return out;
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double gamma_cdf(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(shape, x / scale);
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("pearson needs two samples of equal length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw std::invalid_argument("zero-variance sample");
  return sxy / std::sqrt(sxx * syy);
}

CorrelationResult correlation_zero_test(std::span<const double> x, std::span<const double> y,
                                        double k, std::size_t min_n) {
  if (x.size() != y.size()) throw std::invalid_argument("samples differ in length");
  if (x.size() < min_n) throw std::invalid_argument("correlation test needs more samples");
  CorrelationResult out;
  out.r = pearson(x, y);
  out.bound = k / std::sqrt(static_cast<double>(x.size()));
  out.passed = std::abs(out.r) <= out.bound;
  return out;
}

MartingaleResult martingale_flatness(const std::vector<std::vector<double>>& price_paths, double r,
                                     const TimeGrid& grid, std::size_t stride, double k_band,
                                     std::size_t min_paths) {
  if (price_paths.size() < min_paths) {
    throw std::invalid_argument("martingale check needs more paths");
  }
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  const std::size_t nodes = grid.size();
  for (const auto& p : price_paths) {
    if (p.size() != nodes) throw std::invalid_argument("price path length != grid size");
  }
  std::vector<double> column(price_paths.size());
  auto discounted_column = [&](std::size_t k) {
    const double df = std::exp(-r * grid.time(k));
    for (std::size_t i = 0; i < price_paths.size(); ++i) column[i] = df * price_paths[i][k];
    return summarize(column);
  };

  MartingaleResult out;
  out.reference = discounted_column(0).mean;
  out.passed = true;
  const double floor = 1e-12 * (1.0 + std::abs(out.reference));
  for (std::size_t k = stride; k < nodes + stride; k += stride) {
    const std::size_t node = std::min(k, nodes - 1);
    const auto s = discounted_column(node);
    const double diff = std::abs(s.mean - out.reference);
    ++out.nodes_checked;
    if (diff > k_band * s.mean_se + floor) out.passed = false;
    const double z = s.mean_se > 0.0 ? diff / s.mean_se : (diff > floor ? INFINITY : 0.0);
    if (z > out.worst_z) {
      out.worst_z = z;
      out.worst_node = node;
    }
    if (node == nodes - 1) break;
  }
  return out;
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string RunReport::to_text() const {
  std::string out;
  char buf[512];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "[%s] %-44s stat=%-14.6g tol=%-12.6g %7.2fs",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.statistic, c.tolerance, c.seconds);
    out += buf;
    if (!c.detail.empty()) {
      out += "  ";
      out += c.detail;
    }
    out += '\n';
  }
  out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
  return out;
}

std::string RunReport::to_json() const {
  auto escape = [](const std::string& s) {
    std::string o;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') o += '\\';
      o += ch;
    }
    return o;
  };
  auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("null"); };
  std::string out = "{\"passed\":";
  out += passed() ? "true" : "false";
  out += ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    if (i) out += ',';
    out += "{\"name\":\"" + escape(c.name) + "\",\"statistic\":" + num(c.statistic) +
           ",\"tolerance\":" + num(c.tolerance) + ",\"passed\":" + (c.passed ? "true" : "false") +
           ",\"seconds\":" + num(c.seconds) + ",\"detail\":\"" + escape(c.detail) + "\"}";
  }
  out += "]}";
  return out;
}

}  // namespace vgip
