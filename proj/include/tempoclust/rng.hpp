#pragma once

#include <cmath>
#include <cstdint>

namespace tempoclust {

// splitmix64: 64-bit state, full period, cheap to seed. One instance per
// logical stream; derive independent child streams with split_seed so
// concurrent consumers never share state. All derived draws (uniform,
// integer, gaussian) are built from next() only, keeping byte-level
// reproducibility independent of the standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n); n must be >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via the Marsaglia polar method; the paired deviate is
  // cached, so draws come in deterministic order but not at fixed cost.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Deterministic child seed for stream `index` of a parent stream.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  return g.next();
}

}  // namespace tempoclust
