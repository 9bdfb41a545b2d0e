#include "bfvar/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bfvar::rng {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;  // 2^64 / phi
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_index) {
  key_ = mix64(mix64(seed) ^ mix64(kGamma * (stream_index + 1)));
}

std::uint64_t Stream::next_u64() { return mix64(key_ + kGamma * ++counter_); }

double Stream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // u1 in (0,1] so the log is finite.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(angle);
  has_cached_gaussian_ = true;
  return r * std::cos(angle);
}

std::uint64_t Stream::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("rng: bound must be positive");
  if (bound == 1) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t v;
  do {
    v = next_u64() & mask;
  } while (v >= bound);
  return v;
}

}  // namespace bfvar::rng
