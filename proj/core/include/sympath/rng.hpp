#pragma once

#include <cstdint>

#include "sympath/types.hpp"

namespace sympath {

/// Deterministic, platform-independent random stream (splitmix64 core).
/// std::random distributions are implementation-defined, so every sampled
/// value in test suites and reports goes through this class instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Random symmetric d x d matrix with entries uniform in [-scale, scale].
  Matrix symmetric(int d, double scale) {
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = uniform(-scale, scale);
    return a;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sympath
