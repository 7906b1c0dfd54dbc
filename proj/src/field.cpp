#include "flatrank/field.hpp"

#include <array>
#include <bit>
#include <vector>

namespace flatrank {

namespace {

// Lowest-weight irreducible polynomials over GF(2): the first trinomial
// x^k + x^a + 1 by increasing a, otherwise the first pentanomial in
// lexicographic order of (a, b, c). Entry i is degree i + 1.
constexpr std::array<std::uint64_t, 63> kReductionPolys = {
    0x0000000000000003ULL, 0x0000000000000007ULL, 0x000000000000000bULL,
    0x0000000000000013ULL, 0x0000000000000025ULL, 0x0000000000000043ULL,
    0x0000000000000083ULL, 0x000000000000011bULL, 0x0000000000000203ULL,
    0x0000000000000409ULL, 0x0000000000000805ULL, 0x0000000000001009ULL,
    0x000000000000201bULL, 0x0000000000004021ULL, 0x0000000000008003ULL,
    0x000000000001002bULL, 0x0000000000020009ULL, 0x0000000000040009ULL,
    0x0000000000080027ULL, 0x0000000000100009ULL, 0x0000000000200005ULL,
    0x0000000000400003ULL, 0x0000000000800021ULL, 0x000000000100001bULL,
    0x0000000002000009ULL, 0x000000000400001bULL, 0x0000000008000027ULL,
    0x0000000010000003ULL, 0x0000000020000005ULL, 0x0000000040000003ULL,
    0x0000000080000009ULL, 0x000000010000008dULL, 0x0000000200000401ULL,
    0x0000000400000081ULL, 0x0000000800000005ULL, 0x0000001000000201ULL,
    0x0000002000000053ULL, 0x0000004000000063ULL, 0x0000008000000011ULL,
    0x0000010000000039ULL, 0x0000020000000009ULL, 0x0000040000000081ULL,
    0x0000080000000059ULL, 0x0000100000000021ULL, 0x000020000000001bULL,
    0x0000400000000003ULL, 0x0000800000000021ULL, 0x000100000000002dULL,
    0x0002000000000201ULL, 0x000400000000001dULL, 0x000800000000004bULL,
    0x0010000000000009ULL, 0x0020000000000047ULL, 0x0040000000000201ULL,
    0x0080000000000081ULL, 0x0100000000000095ULL, 0x0200000000000011ULL,
    0x0400000000080001ULL, 0x0800000000000095ULL, 0x1000000000000003ULL,
    0x2000000000000027ULL, 0x4000000020000001ULL, 0x8000000000000003ULL,
};

int poly_degree(std::uint64_t a) { return a == 0 ? -1 : 63 - std::countl_zero(a); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t f) {
  const int df = poly_degree(f);
  for (int da = poly_degree(a); da >= df; da = poly_degree(a)) a ^= f << (da - df);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Product of two residues modulo f (both of degree < deg f).
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
  const int k = poly_degree(f);
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1U;
    a <<= 1U;
    if ((a >> k) & 1U) a ^= f;
  }
  return r;
}

// x^(2^j) mod f
std::uint64_t frobenius_power_of_x(int j, std::uint64_t f) {
  std::uint64_t x = poly_mod(2, f);
  for (int i = 0; i < j; ++i) x = poly_mulmod(x, x, f);
  return x;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

bool is_irreducible_gf2(std::uint64_t poly) {
  const int k = poly_degree(poly);
  if (k < 1) return false;
  if (k == 1) return true;
  const std::uint64_t x = 2;
  if (frobenius_power_of_x(k, poly) != x) return false;
  for (int q : prime_divisors(k)) {
    const std::uint64_t g = frobenius_power_of_x(k / q, poly) ^ x;
    if (poly_gcd(poly, g) != 1) return false;
  }
  return true;
}

std::uint64_t builtin_reduction_poly(int k) {
  if (k < 1 || k > 63) throw FieldError("binary field degree must be in [1, 63], got " + std::to_string(k));
  return kReductionPolys[static_cast<std::size_t>(k - 1)];
}

FieldDescriptor make_prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) throw FieldError("prime modulus must be below 2^31, got " + std::to_string(p));
  if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  return FieldDescriptor(FieldKind::Prime, p, 1, 0);
}

FieldDescriptor make_binary_field(int k) {
  return FieldDescriptor(FieldKind::Binary, 2, k, builtin_reduction_poly(k));
}

std::uint64_t FieldDescriptor::reduce(std::uint64_t value) const noexcept {
  if (kind_ == FieldKind::Prime) return value % p_;
  return poly_mod(value, poly_);
}

std::uint64_t FieldDescriptor::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t result = 1;
  while (e != 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

std::uint64_t FieldDescriptor::inv(std::uint64_t a) const {
  if (a == 0) throw FieldError("inverse of zero in " + name());
  // Lagrange: a^(q-2) = a^-1 for nonzero a
  return pow(a, order() - 2);
}

std::string FieldDescriptor::name() const {
  if (kind_ == FieldKind::Prime) return "GF(" + std::to_string(p_) + ")";
  return "GF(2^" + std::to_string(k_) + ")";
}

FieldElement::FieldElement(const FieldDescriptor& field, std::uint64_t repr) : field_(field), repr_(repr) {
  if (!field.is_canonical(repr)) {
    throw FieldError(std::to_string(repr) + " is not a canonical element of " + field.name());
  }
}

const FieldDescriptor& FieldElement::same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw FieldError("field mismatch: " + field_.name() + " vs " + o.field_.name());
  }
  return field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  const auto& f = same_field(o);
  return {f, f.add(repr_, o.repr_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  const auto& f = same_field(o);
  return {f, f.sub(repr_, o.repr_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  const auto& f = same_field(o);
  return {f, f.mul(repr_, o.repr_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  const auto& f = same_field(o);
  return {f, f.mul(repr_, f.inv(o.repr_))};
}

FieldElement FieldElement::operator-() const { return {field_, field_.neg(repr_)}; }

FieldElement FieldElement::inv() const { return {field_, field_.inv(repr_)}; }

}  // namespace flatrank
