#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace flatrank {

/// SplitMix64. The stream is fixed bit-for-bit so seeds in reports can be
/// replayed from any language:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform(b) rejects draws below (2^64 - b) mod b and returns draw mod b.
/// split() seeds a child generator with the next draw.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() noexcept { return (next() >> 63) != 0; }

  Rng split() noexcept { return Rng(next()); }

  /// Fisher-Yates from the back: swap i with uniform(i + 1).
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i-- > 1;) {
      std::swap(v[i], v[static_cast<std::size_t>(uniform(i + 1))]);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace flatrank
