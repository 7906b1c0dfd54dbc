#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatrank/rng.hpp"
#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

namespace flatrank {

class SearchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration refuses populations with more free entries.
inline constexpr std::size_t kMaxFreeEntries = 22;

/// Outcome of a population sweep. Rank sweeps fill the min_* fields and
/// witnesses; the oddtown search fills best_family.
struct SearchReport {
  std::string population;
  std::uint64_t examined = 0;
  std::optional<std::uint64_t> seed;

  /// ceil(a / (d - 1)) and ceil(d a / (d - 1)).
  std::size_t mfrank_lower_bound = 0;
  std::size_t sum_lower_bound = 0;
  std::optional<std::size_t> min_mfrank;
  std::optional<std::size_t> min_sum_frank;
  /// Members below either lower bound; any nonzero value is a bug.
  std::uint64_t violations = 0;
  /// First tensor attaining min_mfrank, then first attaining min_sum_frank.
  std::vector<Tensor> witnesses;

  std::optional<TupleFamily> best_family;
  std::uint64_t family_bound = 0;

  /// Wall-clock time; not part of the deterministic serialization.
  double elapsed_seconds = 0.0;
};

/// Thread count for sweeps: FLATRANK_THREADS if set and positive, else the
/// hardware concurrency.
unsigned sweep_threads();

/// Number of entries of A^d that are neither constant nor all-distinct.
std::size_t free_entry_count(std::size_t a, std::size_t d);

/// Enumerates every GF(2) semi-diagonal tensor on A^d with |A| = a: constant
/// entries fixed to 1, all-distinct entries 0, the rest free. Member number
/// `mask` sets the j-th free entry (row-major order) to bit j of mask.
SearchReport exhaustive_min_mfrank(std::size_t a, std::size_t d, unsigned threads = 0);
/// The tensor enumerated as member `mask`.
Tensor exhaustive_member(std::size_t a, std::size_t d, std::uint64_t mask);

/// Semi-diagonal tensor with uniform nonzero constant entries and uniform
/// mixed entries, drawn in row-major order (all-distinct entries consume no
/// draws).
Tensor random_semidiagonal(std::size_t a, std::size_t d, const FieldDescriptor& field, Rng& rng);

/// `samples` random semi-diagonal tensors, sample i drawn from Rng(seed + i).
SearchReport random_semidiagonal_sweep(std::size_t a, std::size_t d, const FieldDescriptor& field,
                                       std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

/// Random greedy growth of cross-d-wise Oddtown families over [0, n): each of
/// `budget` trials draws a uniform d-tuple of subsets and keeps it if the
/// family stays valid; after 64 consecutive rejections the family restarts
/// from empty. Reports the largest family seen.
SearchReport random_cross_oddtown_search(unsigned n, std::size_t d, std::uint64_t budget, Rng& rng);

}  // namespace flatrank
