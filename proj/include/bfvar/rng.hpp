// Counter-based random number streams.
//
// A Stream is a pure function of (seed, stream_index, counter): the k-th raw
// output is mix64(key + k * gamma) with key derived by hashing seed and
// stream index. Replicate b of a resampling run and simulated dataset i of a
// Monte Carlo run each get their own stream, so results do not depend on how
// work is scheduled across threads.

#pragma once

#include <cstdint>

namespace bfvar::rng {

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit();

  /// Standard normal via Box-Muller; generates in pairs and caches one.
  double next_gaussian();

  /// Uniform on {0, ..., bound-1}; bound >= 1. Bitmask rejection, unbiased.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

/// SplitMix64 finalizer; exposed because tests use it as a hash.
std::uint64_t mix64(std::uint64_t x);

}  // namespace bfvar::rng
