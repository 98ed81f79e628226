#pragma once

// Counter-based random streams. A stream is a key plus a draw counter; output i is a
// bijective mix of key + i * golden, so streams for different (seed, N, trial) keys are
// independent of scheduling and can be derived in any order.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace permsv {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Stream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++draws_;
    return mix64(key_ + draws_ * kGolden);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t draws() const { return draws_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_pos() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal by Box-Muller; always consumes two draws.
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t draws_ = 0;
};

// Independent substream keyed by (master, a, b), e.g. (seed, N, trial index).
constexpr Stream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t k = mix64(master ^ 0x6A09E667F3BCC908ULL);
  k = mix64(k + mix64(a + 0xBB67AE8584CAA73BULL));
  k = mix64(k + mix64(b + 0x3C6EF372FE94F82BULL));
  return Stream(k);
}

}  // namespace permsv
