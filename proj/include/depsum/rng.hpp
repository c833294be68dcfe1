#pragma once

#include <cstdint>

namespace depsum {

// Deterministic splitmix64 stream. Case-level seeds are derived as
// derive(seed, case_index) so sharding cases across workers cannot change results.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed);
    r.state_ += 0xbf58476d1ce4e5b9ull * (index + 1);
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

  // uniform in [lo, hi] inclusive
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // uniform in [0, 1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  bool next_bool() { return next_u64() & 1; }

private:
  std::uint64_t state_;
};

}  // namespace depsum
