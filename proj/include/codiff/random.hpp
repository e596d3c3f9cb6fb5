#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "codiff/types.hpp"

namespace codiff {

/// Seedable generator whose output is identical on every platform.
///
/// std::mt19937_64 has a fully specified output sequence; the standard
/// distributions do not, so the conversions to doubles and bounded integers
/// are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the closed range [lo, hi], by rejection.
  std::int64_t uniformInt(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vector uniformVector(int d, double lo, double hi) {
    Vector v(d);
    for (int k = 0; k < d; ++k) v(k) = uniform(lo, hi);
    return v;
  }

  Vector normalVector(int d) {
    Vector v(d);
    for (int k = 0; k < d; ++k) v(k) = normal();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace codiff
