// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace oddr {

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// A seeded, independently addressable random stream.
//
// The engine key is mix64(seed ^ mix64(stream_index + 0x9E3779B97F4A7C15)),
// which feeds a std::mt19937_64. Identical (seed, stream_index) pairs replay
// identical sequences; distinct indices under one seed (or distinct seeds
// under one index) map to distinct keys because mix64 is a bijection.
//
// Consumers that need their own sub-streams (one per tree, one per image)
// call fork(i), which derives a child keyed on both parent coordinates.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  RngStream fork(std::uint64_t child_index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

RngStream derive_stream(std::uint64_t seed, std::uint64_t stream_index);

}  // namespace oddr
