// Copyright 2026 the fdcr authors
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

/// @file rng.hpp
/// @brief Splittable deterministic random source.
///
/// SplitMix64 is used both as the stream generator and as the seed mixer for
/// per-index substreams, so Monte Carlo trials can be evaluated in any order
/// (and on any number of threads) with bit-identical results. All variate
/// generation below is written out explicitly instead of going through
/// <random> distributions, whose output is implementation-defined.

#ifndef FDCR_RNG_HPP
#define FDCR_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace fdcr {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  constexpr result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed for the `index`-th substream of a master seed: the master seed is
/// mixed once, xor-folded with the Weyl-spaced index, and mixed again.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 outer(seed);
  SplitMix64 inner(outer() ^ (index * 0x9e3779b97f4a7c15ULL));
  return inner();
}

/// Uniform double strictly inside (0, 1), 53-bit resolution.
inline double uniform01(SplitMix64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(SplitMix64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

/// Standard circular complex Gaussian (unit variance, zero pseudo-variance)
/// via Box-Muller; |z|^2 is exponential with unit mean.
inline std::complex<double> complex_unit_gaussian(SplitMix64& g) {
  const double u1 = uniform01(g);
  const double u2 = uniform01(g);
  const double r = std::sqrt(-std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

struct CorrelatedGains {
  std::complex<double> first;
  std::complex<double> second;
};

/// Pair of unit-variance complex gains with correlation coefficient `rho`
/// applied to the complex gains themselves: second = rho*first + sqrt(1-rho^2)*w.
inline CorrelatedGains correlated_unit_pair(double rho, SplitMix64& g) {
  const auto u = complex_unit_gaussian(g);
  const auto w = complex_unit_gaussian(g);
  return {u, rho * u + std::sqrt(1.0 - rho * rho) * w};
}

}  // namespace fdcr

#endif  // FDCR_RNG_HPP
