#pragma once

#include <cmath>
#include <cstdint>

namespace cftray {

// Deterministic pseudo-random generator (xoshiro256++ seeded through
// splitmix64). Identical seeds give identical sequences on every platform.
// One instance per thread of use; there is no internal locking.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform strictly inside (0, 1), 53-bit resolution. Never returns an
  // endpoint, so logarithms of draws are always finite.
  double uniform() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() noexcept { return -std::log(uniform()); }

  // One Box-Muller pair of independent standard normals.
  void normal_pair(double& a, double& b) noexcept {
    const double u = uniform();
    const double v = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u));
    a = rad * std::cos(2.0 * M_PI * v);
    b = rad * std::sin(2.0 * M_PI * v);
  }

  double normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double a, b;
    normal_pair(a, b);
    spare_ = b;
    have_spare_ = true;
    return a;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cftray
