#pragma once

#include <cmath>
#include <cstdint>

namespace plateau {

// Counter-based stream: the generator for sample `index` under `seed` is a
// pure function of (seed, index), so parallel and serial runs agree
// bit-for-bit and any sample can be regenerated in isolation.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index) {
    state_ = mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL));
    has_gauss_ = false;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // uniform integer in [0, bound)
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  double next_gaussian() {
    if (has_gauss_) {
      has_gauss_ = false;
      return gauss_;
    }
    // Box-Muller; log(0) avoided by the strictly-positive mapping below
    double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    gauss_ = r * std::sin(a);
    has_gauss_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double gauss_ = 0.0;
  bool has_gauss_;
};

}  // namespace plateau
