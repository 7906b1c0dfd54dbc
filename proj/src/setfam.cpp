#include "flatrank/setfam.hpp"

#include <functional>

#include "flatrank/combinatorics.hpp"

namespace flatrank {

namespace {

void check_ground_set(unsigned n, std::uint64_t mask) {
  if (n > 63) throw SetFamilyError("ground set size must be at most 63");
  if ((mask & ~low_bits(n)) != 0) throw SetFamilyError("set mask leaves the ground set");
}

// Calls visit on every ordered tuple of `width` distinct positions in [0, m)
// until it returns true. Returns whether a visit returned true.
template <typename Visit>
bool find_injective_tuple(std::size_t m, std::size_t width, Visit&& visit) {
  if (width > m) return false;
  std::vector<std::size_t> tuple(width);
  std::vector<char> used(m, 0);
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == width) return visit(std::span<const std::size_t>(tuple));
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      tuple[depth] = i;
      const bool hit = self(self, depth + 1);
      used[i] = 0;
      if (hit) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

void SetFamily::validate() const {
  if (n > 63) throw SetFamilyError("ground set size must be at most 63");
  for (std::uint64_t m : members) check_ground_set(n, m);
}

void TupleFamily::validate() const {
  if (n > 63) throw SetFamilyError("ground set size must be at most 63");
  if (d == 0) throw SetFamilyError("tuple width must be positive");
  for (const auto& tuple : members) {
    if (tuple.size() != d) throw SetFamilyError("member tuple does not have d slots");
    for (std::uint64_t m : tuple) check_ground_set(n, m);
  }
}

TupleFamily TupleFamily::diagonal(const SetFamily& family, std::size_t d) {
  TupleFamily out{family.n, d, {}};
  for (std::uint64_t m : family.members) out.members.emplace_back(d, m);
  return out;
}

int intersection_size(std::span<const std::uint64_t> masks) {
  if (masks.empty()) throw SetFamilyError("intersection of an empty list");
  std::uint64_t acc = masks.front();
  for (std::uint64_t m : masks.subspan(1)) acc &= m;
  return popcount(acc);
}

std::optional<std::vector<std::size_t>> cross_oddtown_violation(const TupleFamily& family) {
  family.validate();
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (intersection_size(family.members[i]) % 2 == 0) return std::vector<std::size_t>{i};
  }
  std::optional<std::vector<std::size_t>> witness;
  std::vector<std::uint64_t> slots(family.d);
  find_injective_tuple(family.size(), family.d, [&](std::span<const std::size_t> pos) {
    for (std::size_t j = 0; j < family.d; ++j) slots[j] = family.members[pos[j]][j];
    if (intersection_size(slots) % 2 == 0) return false;
    witness.emplace(pos.begin(), pos.end());
    return true;
  });
  return witness;
}

bool is_cross_oddtown(const TupleFamily& family) { return !cross_oddtown_violation(family).has_value(); }

Tensor oddtown_tensor(const TupleFamily& family) {
  family.validate();
  if (family.members.empty()) throw SetFamilyError("oddtown tensor of an empty family");
  Tensor t = Tensor::cube(family.size(), family.d, make_prime_field(2));
  std::vector<std::size_t> index(family.d, 0);
  std::size_t off = 0;
  do {
    std::uint64_t acc = low_bits(family.n);
    for (std::size_t j = 0; j < family.d; ++j) acc &= family.members[index[j]][j];
    t.set_offset(off++, static_cast<std::uint64_t>(popcount(acc) & 1));
  } while (next_index(index, t.dims()));
  return t;
}

std::vector<std::vector<std::vector<std::uint64_t>>> oddtown_rank1_certificate(const TupleFamily& family) {
  family.validate();
  std::vector<std::vector<std::vector<std::uint64_t>>> terms(family.n);
  for (unsigned k = 0; k < family.n; ++k) {
    auto& factors = terms[k];
    factors.assign(family.d, std::vector<std::uint64_t>(family.size(), 0));
    for (std::size_t j = 0; j < family.d; ++j) {
      for (std::size_t a = 0; a < family.size(); ++a) factors[j][a] = (family.members[a][j] >> k) & 1U;
    }
  }
  return terms;
}

Tensor reconstruct_certificate(const TupleFamily& family,
                               const std::vector<std::vector<std::vector<std::uint64_t>>>& certificate) {
  return sum_of_outer_products(std::vector<std::size_t>(family.d, family.size()), make_prime_field(2), certificate);
}

std::uint64_t cross_oddtown_bound(std::uint64_t n, std::uint64_t d) {
  if (n < 1 || d < 2) throw SetFamilyError("cross-oddtown bound needs n >= 1 and d >= 2");
  return checked_mul(d - 1, n);
}

TupleFamily repeated_singletons(unsigned n, std::size_t d, std::size_t copies) {
  TupleFamily out{n, d, {}};
  for (unsigned k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < copies; ++c) out.members.emplace_back(d, std::uint64_t{1} << k);
  }
  out.validate();
  return out;
}

}  // namespace flatrank
