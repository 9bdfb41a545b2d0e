#include <doctest.h>

#include <cmath>
#include <vector>

#include "bfvar/rng.hpp"

using bfvar::rng::Stream;

TEST_CASE("streams are deterministic and distinct") {
  Stream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());  // different stream index
    CHECK(va != d.next_u64());  // different seed
  }
}

TEST_CASE("unit draws live in [0,1) and look uniform") {
  Stream s(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // mean 1/2, sd of the mean = 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("gaussian draws have the right first moments") {
  Stream s(2, 0);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_gaussian();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("bounded draws are unbiased over small ranges") {
  Stream s(3, 0);
  const std::uint64_t bound = 6;
  std::vector<int> counts(bound, 0);
  const int n = 120000;
  for (int i = 0; i < n; ++i) ++counts[s.next_below(bound)];
  for (auto c : counts)
    CHECK(std::abs(c - n / 6.0) < 5.0 * std::sqrt(n / 6.0));
  CHECK_THROWS(s.next_below(0));
}
