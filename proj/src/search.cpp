#include "flatrank/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "flatrank/combinatorics.hpp"

namespace flatrank {

namespace {

struct Minimum {
  std::size_t value = SIZE_MAX;
  std::uint64_t member = 0;

  void offer(std::size_t v, std::uint64_t m) {
    if (v < value || (v == value && m < member)) {
      value = v;
      member = m;
    }
  }
};

struct ChunkResult {
  Minimum mfrank;
  Minimum sum;
  std::uint64_t violations = 0;
};

void check_shape(std::size_t a, std::size_t d) {
  if (a < 1) throw SearchError("|A| must be at least 1");
  if (d < 2) throw SearchError("order d must be at least 2");
}

std::size_t mfrank_floor(std::size_t a, std::size_t d) { return ceil_div(a, d - 1); }
std::size_t sum_floor(std::size_t a, std::size_t d) { return ceil_div(d * a, d - 1); }

// Splits [0, count) into `parts` contiguous ranges and runs fn(begin, end)
// on each, one thread per range.
template <typename Fn>
std::vector<ChunkResult> run_chunks(std::uint64_t count, unsigned parts, Fn fn) {
  parts = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(parts, count)));
  std::vector<ChunkResult> results(parts);
  if (parts == 1) {
    results[0] = fn(0, count);
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned p = 0; p < parts; ++p) {
    const std::uint64_t begin = count * p / parts;
    const std::uint64_t end = count * (p + 1) / parts;
    pool.emplace_back([&, p, begin, end] { results[p] = fn(begin, end); });
  }
  for (auto& th : pool) th.join();
  return results;
}

ChunkResult merge(const std::vector<ChunkResult>& parts) {
  ChunkResult out;
  for (const auto& r : parts) {
    out.mfrank.offer(r.mfrank.value, r.mfrank.member);
    out.sum.offer(r.sum.value, r.sum.member);
    out.violations += r.violations;
  }
  return out;
}

}  // namespace

unsigned sweep_threads() {
  if (const char* env = std::getenv("FLATRANK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::size_t free_entry_count(std::size_t a, std::size_t d) {
  check_shape(a, d);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total = checked_mul(total, a);
  std::uint64_t distinct = 0;
  if (d <= a) {
    distinct = 1;
    for (std::size_t i = 0; i < d; ++i) distinct *= a - i;
  }
  return static_cast<std::size_t>(total - a - distinct);
}

Tensor exhaustive_member(std::size_t a, std::size_t d, std::uint64_t mask) {
  check_shape(a, d);
  Tensor t = Tensor::cube(a, d, make_prime_field(2));
  std::vector<std::size_t> index(d, 0);
  std::size_t off = 0;
  unsigned bit = 0;
  do {
    switch (classify_index(index)) {
      case IndexPattern::Constant:
        t.set_offset(off, 1);
        break;
      case IndexPattern::AllDistinct:
        break;
      case IndexPattern::Mixed:
        t.set_offset(off, (mask >> bit) & 1U);
        ++bit;
        break;
    }
    ++off;
  } while (next_index(index, t.dims()));
  return t;
}

SearchReport exhaustive_min_mfrank(std::size_t a, std::size_t d, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t free = free_entry_count(a, d);
  if (free > kMaxFreeEntries) {
    throw SearchError("population has " + std::to_string(free) + " free entries; the cap is " +
                      std::to_string(kMaxFreeEntries));
  }
  const std::uint64_t count = std::uint64_t{1} << free;
  const Tensor base = exhaustive_member(a, d, 0);

  // Position of every free entry in each flattening.
  struct Cell {
    std::size_t row;
    std::size_t col;
  };
  std::vector<std::vector<Cell>> cells(d);
  std::vector<std::size_t> index(d, 0);
  std::size_t off = 0;
  do {
    if (classify_index(index) == IndexPattern::Mixed) {
      for (std::size_t axis = 0; axis < d; ++axis) {
        cells[axis].push_back({index[axis], flattening_column(base, axis, index)});
      }
    }
    ++off;
  } while (next_index(index, base.dims()));

  const std::size_t cols = base.size() / a;
  const bool packed = cols <= 64;
  std::vector<std::vector<std::uint64_t>> base_rows(d, std::vector<std::uint64_t>(a, 0));
  if (packed) {
    for (std::size_t axis = 0; axis < d; ++axis) {
      const auto flat = flatten(base, axis);
      for (std::size_t r = 0; r < a; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (flat.matrix(r, c) != 0) base_rows[axis][r] |= std::uint64_t{1} << c;
        }
      }
    }
  }

  const std::size_t need_max = mfrank_floor(a, d);
  const std::size_t need_sum = sum_floor(a, d);
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    ChunkResult res;
    std::vector<std::uint64_t> rows(a);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      std::size_t mx = 0;
      std::size_t sum = 0;
      for (std::size_t axis = 0; axis < d; ++axis) {
        std::size_t rk = 0;
        if (packed) {
          std::copy(base_rows[axis].begin(), base_rows[axis].end(), rows.begin());
          for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
            const auto& cell = cells[axis][static_cast<std::size_t>(std::countr_zero(rest))];
            rows[cell.row] |= std::uint64_t{1} << cell.col;
          }
          rk = rank_gf2_words(rows);
        } else {
          rk = flattening_rank(exhaustive_member(a, d, mask), axis);
        }
        mx = std::max(mx, rk);
        sum += rk;
      }
      res.mfrank.offer(mx, mask);
      res.sum.offer(sum, mask);
      if (mx < need_max || sum < need_sum) ++res.violations;
    }
    return res;
  };
  const ChunkResult total = merge(run_chunks(count, threads == 0 ? sweep_threads() : threads, chunk));

  SearchReport report;
  report.population = "exhaustive GF(2) semi-diagonal, |A|=" + std::to_string(a) + ", d=" + std::to_string(d);
  report.examined = count;
  report.mfrank_lower_bound = need_max;
  report.sum_lower_bound = need_sum;
  report.min_mfrank = total.mfrank.value;
  report.min_sum_frank = total.sum.value;
  report.violations = total.violations;
  report.witnesses.push_back(exhaustive_member(a, d, total.mfrank.member));
  report.witnesses.push_back(exhaustive_member(a, d, total.sum.member));
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Tensor random_semidiagonal(std::size_t a, std::size_t d, const FieldDescriptor& field, Rng& rng) {
  check_shape(a, d);
  Tensor t = Tensor::cube(a, d, field);
  const std::uint64_t q = field.order();
  std::vector<std::size_t> index(d, 0);
  std::size_t off = 0;
  do {
    switch (classify_index(index)) {
      case IndexPattern::Constant:
        t.set_offset(off, 1 + rng.uniform(q - 1));
        break;
      case IndexPattern::AllDistinct:
        break;
      case IndexPattern::Mixed:
        t.set_offset(off, rng.uniform(q));
        break;
    }
    ++off;
  } while (next_index(index, t.dims()));
  return t;
}

SearchReport random_semidiagonal_sweep(std::size_t a, std::size_t d, const FieldDescriptor& field,
                                       std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  check_shape(a, d);
  const std::size_t need_max = mfrank_floor(a, d);
  const std::size_t need_sum = sum_floor(a, d);
  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    ChunkResult res;
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng(seed + i);
      const auto ranks = flattening_ranks(random_semidiagonal(a, d, field, rng));
      const std::size_t mx = *std::max_element(ranks.begin(), ranks.end());
      std::size_t sum = 0;
      for (std::size_t r : ranks) sum += r;
      res.mfrank.offer(mx, i);
      res.sum.offer(sum, i);
      if (mx < need_max || sum < need_sum) ++res.violations;
    }
    return res;
  };
  SearchReport report;
  report.population = "random semi-diagonal over " + field.name() + ", |A|=" + std::to_string(a) +
                      ", d=" + std::to_string(d);
  report.examined = samples;
  report.seed = seed;
  report.mfrank_lower_bound = need_max;
  report.sum_lower_bound = need_sum;
  if (samples > 0) {
    const ChunkResult total = merge(run_chunks(samples, threads == 0 ? sweep_threads() : threads, chunk));
    report.min_mfrank = total.mfrank.value;
    report.min_sum_frank = total.sum.value;
    report.violations = total.violations;
    for (std::uint64_t i : {total.mfrank.member, total.sum.member}) {
      Rng rng(seed + i);
      report.witnesses.push_back(random_semidiagonal(a, d, field, rng));
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SearchReport random_cross_oddtown_search(unsigned n, std::size_t d, std::uint64_t budget, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 1 || n > 63) throw SearchError("ground set size must be in [1, 63]");
  if (d < 2) throw SearchError("tuple width d must be at least 2");
  constexpr std::uint64_t kRestartAfter = 64;

  SearchReport report;
  report.population = "random cross-" + std::to_string(d) + "-wise oddtown growth, n=" + std::to_string(n);
  report.seed = rng.seed();
  report.examined = budget;
  report.family_bound = cross_oddtown_bound(n, d);

  TupleFamily best{n, d, {}};
  TupleFamily current{n, d, {}};
  std::uint64_t stall = 0;
  const std::uint64_t universe = std::uint64_t{1} << n;
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    std::vector<std::uint64_t> tuple(d);
    for (auto& slot : tuple) slot = rng.uniform(universe);
    current.members.push_back(std::move(tuple));
    if (is_cross_oddtown(current)) {
      stall = 0;
      if (current.size() > best.size()) best = current;
    } else {
      current.members.pop_back();
      if (++stall >= kRestartAfter) {
        current.members.clear();
        stall = 0;
      }
    }
  }
  if (best.size() > report.family_bound) report.violations = 1;
  report.best_family = std::move(best);
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace flatrank
