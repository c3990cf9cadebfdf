#pragma once

#include <cstdint>
#include <random>

#include "gerst/scalar.hpp"

namespace gerst {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, which would break report determinism).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  /// Uniform-ish integer in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(g_() % n); }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool coin() { return (g_() >> 17) & 1U; }
  /// Nonzero scalar with small numerator; over Q sometimes a proper fraction.
  Scalar nonzero_scalar() {
    long num = range(1, 5) * (coin() ? 1 : -1);
    if (!current_field().is_rational()) return Scalar(num);
    long den = coin() ? 1 : range(1, 3);
    return Scalar::fraction(num, den);
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace gerst
