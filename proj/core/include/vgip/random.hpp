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

// Counter-derived random streams and the variate generators used by the
// path simulator.  Every generator here is a small value type: copying one
// forks the stream, and nothing is shared between threads.

#ifndef VGIP_RANDOM_HPP_
#define VGIP_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace vgip {

/// Stage tags keep the gamma, Gaussian and market-factor draws of one path
/// on disjoint streams, so adding a stage never shifts an existing one.
enum class Stage : std::uint64_t {
  kGamma = 1,
  kGaussian = 2,
  kFactor = 3,
  kTest = 0xFF,
};

struct Seed {
  std::uint64_t master = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stream key for (master, path index, stage).
constexpr std::uint64_t stream_key(Seed seed, std::uint64_t path, Stage stage) noexcept {
  return mix64(mix64(mix64(seed.master) ^ path) ^ static_cast<std::uint64_t>(stage));
}

/// xoshiro256++ seeded through SplitMix64.  Satisfies
/// UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t key) noexcept;
  Xoshiro256pp(Seed seed, std::uint64_t path, Stage stage) noexcept
      : Xoshiro256pp(stream_key(seed, path, stage)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Standard normal variates by the Marsaglia polar method.  The spare
/// variate is cached, so a sampler must stay with one stream.
class NormalSampler {
 public:
  double operator()(Xoshiro256pp& rng) noexcept;

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Gamma(shape, scale) variates.  Marsaglia-Tsang squeeze/rejection for
/// shape >= 1; for shape < 1 draws G_{shape+1} * U^{1/shape}.
class GammaSampler {
 public:
  double operator()(Xoshiro256pp& rng, double shape, double scale) noexcept;

 private:
  NormalSampler normal_;
};

}  // namespace vgip

#endif  // VGIP_RANDOM_HPP_
