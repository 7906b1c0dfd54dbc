#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatrank/tensor.hpp"

namespace flatrank {

class SetFamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of subsets of [0, n) as n-bit masks; repeats allowed.
struct SetFamily {
  unsigned n = 0;
  std::vector<std::uint64_t> members;

  /// Throws SetFamilyError if n > 63 or a mask leaves the ground set.
  void validate() const;
  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

/// Ordered list of d-tuples of subsets of [0, n); repeats allowed. Members
/// at different positions count as distinct.
struct TupleFamily {
  unsigned n = 0;
  std::size_t d = 0;
  std::vector<std::vector<std::uint64_t>> members;

  void validate() const;
  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const TupleFamily&, const TupleFamily&) = default;

  /// Diagonal embedding A -> (A, ..., A) of a plain family.
  static TupleFamily diagonal(const SetFamily& family, std::size_t d);
};

/// |A_1 & ... & A_k|.
int intersection_size(std::span<const std::uint64_t> masks);

/// Every member has odd within-tuple intersection and every choice of d
/// members at distinct positions, slot j taken from the j-th, has even
/// intersection.
bool is_cross_oddtown(const TupleFamily& family);
/// The first violated condition, if any: a single position for an even
/// diagonal, or d distinct positions for an odd cross intersection.
std::optional<std::vector<std::size_t>> cross_oddtown_violation(const TupleFamily& family);

/// GF(2) tensor on family^d whose entry at (i_1..i_d) is the parity of
/// |A_{i_1}(1) & ... & A_{i_d}(d)|.
Tensor oddtown_tensor(const TupleFamily& family);

/// n rank-one terms; term k has factor j equal to the indicator over members
/// of "slot j contains element k". Their outer products sum to
/// oddtown_tensor(family).
std::vector<std::vector<std::vector<std::uint64_t>>> oddtown_rank1_certificate(const TupleFamily& family);

/// Reassembles the certificate into a tensor.
Tensor reconstruct_certificate(const TupleFamily& family,
                               const std::vector<std::vector<std::vector<std::uint64_t>>>& certificate);

/// (d - 1) n.
std::uint64_t cross_oddtown_bound(std::uint64_t n, std::uint64_t d);

/// Each singleton {k} of [0, n) as a d-tuple, repeated `copies` times.
TupleFamily repeated_singletons(unsigned n, std::size_t d, std::size_t copies);

}  // namespace flatrank
