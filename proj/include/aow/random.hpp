// Copyright 2026 The aow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "aow/common.hpp"

namespace aow {

/// Name of the stream algorithm, recorded in trace headers.
inline constexpr std::string_view kStreamAlgorithm = "splitmix64-counter";

/// SplitMix64 output function. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/*!
 * Counter-based random stream.
 *
 * The i-th output is mix64(key + i * golden), so the whole state is the pair
 * (key, counter) and a stream can be copied, serialized or forked without
 * touching its parent.
 */
class Stream {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  Stream() = default;
  Stream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  /// Stream for a named purpose under a master seed.
  static Stream named(std::uint64_t seed, std::string_view name) {
    return Stream(mix64(seed ^ mix64(fnv1a64(name))), 0);
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  /// Independent child stream; does not advance this stream.
  Stream fork(std::uint64_t tag) const {
    return Stream(mix64(key_ ^ mix64(tag + 0x632be59bd9b4e019ull)), 0);
  }
  Stream fork(std::string_view tag) const { return fork(fnv1a64(tag)); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// Vector uniform in the ball of radius `radius` (first `dim` components).
inline Vec uniform_in_ball(Stream& rng, double radius, int dim) {
  for (;;) {
    Vec v{};
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
      v[k] = rng.uniform(-1.0, 1.0);
      s += v[k] * v[k];
    }
    if (s <= 1.0) {
      for (int k = 0; k < dim; ++k) v[k] *= radius;
      return v;
    }
  }
}

}  // namespace aow
