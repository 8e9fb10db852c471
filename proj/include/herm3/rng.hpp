#pragma once

// SplitMix64 and xoshiro256** following the public-domain reference
// implementations by Blackman and Vigna (https://prng.di.unimi.it/), so that
// generated batches can be reproduced from any language.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "herm3/complex.hpp"

namespace herm3 {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  /// Independent stream for item `index` of a batch generated from `seed`.
  static constexpr Xoshiro256 for_index(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 key(index);
    return Xoshiro256(SplitMix64(seed).next() ^ key.next());
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  constexpr double symmetric() { return 2.0 * unit() - 1.0; }

  /// Circular complex Gaussian with unit total variance: Re and Im are
  /// independent N(0, 1/2). One Box-Muller pair per sample.
  Cx<double> complex_normal() {
    const double u1 = static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = unit();
    const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) * sqrt(1/2)
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4]{};
};

}  // namespace herm3
