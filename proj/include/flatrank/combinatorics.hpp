#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace flatrank {

/// C(n, k) exactly; throws std::overflow_error past 2^64.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// Sum of C(n, s) for s = 0..top.
inline std::uint64_t binomial_prefix_sum(std::uint64_t n, std::uint64_t top) {
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s <= top && s <= n; ++s) {
    const std::uint64_t term = binomial(n, s);
    if (total > UINT64_MAX - term) throw std::overflow_error("binomial sum exceeds 64 bits");
    total += term;
  }
  return total;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("product exceeds 64 bits");
  return r;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

inline int popcount(std::uint64_t mask) { return std::popcount(mask); }

/// Mask with the low n bits set, n <= 64.
inline std::uint64_t low_bits(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace flatrank
