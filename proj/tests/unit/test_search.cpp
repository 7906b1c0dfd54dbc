#include "doctest.h"

#include "flatrank/combinatorics.hpp"
#include "flatrank/io.hpp"
#include "flatrank/search.hpp"

using namespace flatrank;

TEST_CASE("free entry counts") {
  CHECK(free_entry_count(3, 3) == 18);
  CHECK(free_entry_count(2, 3) == 6);
  // d = 2 has no mixed indices.
  CHECK(free_entry_count(2, 2) == 0);
  CHECK(free_entry_count(4, 2) == 0);
  for (std::size_t a = 1; a <= 4; ++a) {
    for (std::size_t d = 2; d <= 4; ++d) {
      std::size_t expected = 0;
      std::vector<std::size_t> idx(d, 0);
      const std::vector<std::size_t> dims(d, a);
      do {
        if (classify_index(idx) == IndexPattern::Mixed) ++expected;
      } while (next_index(idx, dims));
      CHECK(free_entry_count(a, d) == expected);
    }
  }
}

TEST_CASE("exhaustive minima") {
  const auto r22 = exhaustive_min_mfrank(2, 2, 1);
  CHECK(r22.examined == 1);
  CHECK(r22.min_mfrank == 2u);

  const auto r23 = exhaustive_min_mfrank(2, 3, 1);
  CHECK(r23.examined == 64);
  CHECK(r23.min_mfrank == 1u);
  CHECK(r23.violations == 0);

  const auto r33 = exhaustive_min_mfrank(3, 3, 2);
  CHECK(r33.examined == 262144);
  CHECK(r33.min_mfrank == 2u);
  CHECK(*r33.min_sum_frank >= 5);
  CHECK(r33.violations == 0);
  REQUIRE(r33.witnesses.size() == 2);
  CHECK(is_semi_diagonal(r33.witnesses[0]));
  CHECK(max_flattening_rank(r33.witnesses[0]) == *r33.min_mfrank);
  CHECK(sum_flattening_ranks(r33.witnesses[1]) == *r33.min_sum_frank);

  // Thread count does not change the outcome.
  const auto single = exhaustive_min_mfrank(3, 3, 1);
  CHECK(io::search_report_to_json(single) == io::search_report_to_json(r33));

  CHECK_THROWS_AS(exhaustive_min_mfrank(4, 3), SearchError);
  CHECK_THROWS_AS(exhaustive_min_mfrank(0, 3), SearchError);
  CHECK_THROWS_AS(exhaustive_min_mfrank(3, 1), SearchError);
}

TEST_CASE("exhaustive members") {
  const auto zero = exhaustive_member(2, 3, 0);
  CHECK(is_semi_diagonal(zero));
  CHECK(zero.at({0, 0, 0}) == 1);
  CHECK(zero.at({0, 0, 1}) == 0);
  // Bit j sets the j-th free entry in row-major order; (0,0,1) is first.
  CHECK(exhaustive_member(2, 3, 1).at({0, 0, 1}) == 1);
  CHECK(exhaustive_member(2, 3, 2).at({0, 1, 0}) == 1);
}

TEST_CASE("random semi-diagonal tensors") {
  Rng rng(83);
  for (const auto& f : {make_prime_field(2), make_prime_field(3), make_binary_field(2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto t = random_semidiagonal(3 + rng.uniform(2), 2 + rng.uniform(2), f, rng);
      CHECK(is_semi_diagonal(t));
      CHECK(max_flattening_rank(t) >= ceil_div(t.dim(0), t.order() - 1));
    }
  }
}

TEST_CASE("random sweep determinism and witnesses") {
  const auto gf3 = make_prime_field(3);
  const auto a = random_semidiagonal_sweep(5, 3, gf3, 300, 99, 1);
  const auto b = random_semidiagonal_sweep(5, 3, gf3, 300, 99, 3);
  CHECK(io::dump(io::search_report_to_json(a)) == io::dump(io::search_report_to_json(b)));
  CHECK(a.violations == 0);
  CHECK(*a.min_sum_frank >= 8);
  REQUIRE(a.witnesses.size() == 2);

  // A witness reloaded from its document keeps its ranks.
  const auto doc = io::search_report_to_json(a);
  for (const auto& w : doc["witnesses"]) {
    const auto t = io::tensor_from_json(w);
    std::vector<std::size_t> ranks = w["meta"]["ranks"].get<std::vector<std::size_t>>();
    CHECK(flattening_ranks(t) == ranks);
  }
  CHECK(max_flattening_rank(a.witnesses[0]) == *a.min_mfrank);

  const auto empty = random_semidiagonal_sweep(4, 3, gf3, 0, 1);
  CHECK(empty.examined == 0);
  CHECK_FALSE(empty.min_mfrank.has_value());
}

TEST_CASE("random oddtown growth") {
  Rng rng(5);
  const auto r = random_cross_oddtown_search(3, 2, 4000, rng);
  REQUIRE(r.best_family.has_value());
  CHECK(is_cross_oddtown(*r.best_family));
  CHECK(r.best_family->size() == 3);
  CHECK(r.family_bound == 3);

  Rng rng3(5);
  const auto r3 = random_cross_oddtown_search(3, 3, 4000, rng3);
  CHECK(r3.best_family->size() <= 6);
  CHECK(r3.violations == 0);
  CHECK(is_cross_oddtown(repeated_singletons(3, 3, 2)));

  Rng again(5);
  const auto twin = random_cross_oddtown_search(3, 3, 4000, again);
  CHECK(io::dump(io::search_report_to_json(twin)) == io::dump(io::search_report_to_json(r3)));

  Rng none(1);
  const auto zero = random_cross_oddtown_search(3, 2, 0, none);
  CHECK(zero.examined == 0);
  CHECK(zero.best_family->members.empty());
  CHECK_THROWS_AS(random_cross_oddtown_search(0, 2, 1, none), SearchError);
}
