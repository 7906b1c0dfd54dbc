#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flatrank {

/// Raised for invalid field parameters, mismatched descriptors and
/// inversion of zero.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FieldKind { Prime, Binary };

/// Immutable description of a finite field: GF(p) for a prime p < 2^31, or
/// GF(2^k) for 1 <= k <= 63 with a fixed irreducible reduction polynomial.
///
/// Elements are plain 64-bit representatives: a residue in [0, p) for prime
/// fields, a polynomial bit-mask of degree < k for binary fields. The raw
/// arithmetic members below take and return canonical representatives and
/// do no validation; they are the hot path for rank computations.
class FieldDescriptor {
 public:
  /// GF(2).
  FieldDescriptor() = default;

  FieldKind kind() const noexcept { return kind_; }
  /// Prime modulus (Prime kind), 2 for Binary kind.
  std::uint64_t characteristic() const noexcept { return kind_ == FieldKind::Prime ? p_ : 2; }
  /// Extension degree; 1 for Prime kind.
  int degree() const noexcept { return k_; }
  /// Reduction polynomial including the x^k term; 0 for Prime kind.
  std::uint64_t reduction_poly() const noexcept { return poly_; }
  /// Number of field elements.
  std::uint64_t order() const noexcept {
    return kind_ == FieldKind::Prime ? p_ : (std::uint64_t{1} << k_);
  }
  /// True for GF(2) in either representation.
  bool is_gf2() const noexcept { return order() == 2; }

  bool is_canonical(std::uint64_t repr) const noexcept { return repr < order(); }
  /// Reduces an arbitrary integer to a canonical representative. Binary
  /// fields interpret the integer as a polynomial mask.
  std::uint64_t reduce(std::uint64_t value) const noexcept;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    if (kind_ == FieldKind::Binary) return a ^ b;
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept {
    if (kind_ == FieldKind::Binary || a == 0) return a;
    return p_ - a;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    if (kind_ == FieldKind::Prime) return (a * b) % p_;
    std::uint64_t r = 0;
    while (b != 0) {
      if (b & 1U) r ^= a;
      b >>= 1U;
      a <<= 1U;
      if ((a >> k_) & 1U) a ^= poly_;
    }
    return r;
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse; throws FieldError for 0.
  std::uint64_t inv(std::uint64_t a) const;

  /// "GF(5)" or "GF(2^8)".
  std::string name() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

 private:
  FieldDescriptor(FieldKind kind, std::uint64_t p, int k, std::uint64_t poly)
      : kind_(kind), p_(p), k_(k), poly_(poly) {}

  friend FieldDescriptor make_prime_field(std::uint64_t p);
  friend FieldDescriptor make_binary_field(int k);

  FieldKind kind_ = FieldKind::Prime;
  std::uint64_t p_ = 2;
  int k_ = 1;
  std::uint64_t poly_ = 0;
};

/// GF(p); p must be a prime below 2^31.
FieldDescriptor make_prime_field(std::uint64_t p);
/// GF(2^k) with the built-in low-weight irreducible polynomial for degree k.
FieldDescriptor make_binary_field(int k);

/// Built-in reduction polynomial for degree k (1..63), x^k term included.
std::uint64_t builtin_reduction_poly(int k);
/// Rabin irreducibility test for a GF(2) polynomial given as a bit-mask.
bool is_irreducible_gf2(std::uint64_t poly);
bool is_prime(std::uint64_t n);

/// A field value bound to its descriptor. Arithmetic across different
/// descriptors throws FieldError.
class FieldElement {
 public:
  /// Throws FieldError unless repr is canonical for field.
  FieldElement(const FieldDescriptor& field, std::uint64_t repr);

  static FieldElement zero(const FieldDescriptor& field) { return {field, 0}; }
  static FieldElement one(const FieldDescriptor& field) { return {field, 1}; }

  std::uint64_t repr() const noexcept { return repr_; }
  const FieldDescriptor& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return repr_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  const FieldDescriptor& same_field(const FieldElement& o) const;

  FieldDescriptor field_;
  std::uint64_t repr_;
};

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement neg(const FieldElement& a) { return -a; }
inline FieldElement inv(const FieldElement& a) { return a.inv(); }

}  // namespace flatrank
