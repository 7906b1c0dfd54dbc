#include "doctest.h"

#include <algorithm>

#include "../common/generators.hpp"
#include "flatrank/combinatorics.hpp"
#include "flatrank/extalg.hpp"
#include "flatrank/rainbow.hpp"

using namespace flatrank;

namespace {

// Every choice of `size` (color, edge) pairs, by odometer.
bool naive_has_rainbow(const ColoredHypergraph& h, std::size_t size) {
  if (size > h.z()) return false;
  const std::vector<std::size_t> dims(size, h.z() * h.t);
  std::vector<std::size_t> pick(size, 0);
  do {
    bool ok = true;
    std::uint64_t used = 0;
    for (std::size_t a = 0; a < size && ok; ++a) {
      const std::size_t color = pick[a] / h.t;
      for (std::size_t b = 0; b < a; ++b) ok = ok && pick[b] / h.t != color;
      const std::uint64_t edge = h.colors[color][pick[a] % h.t];
      ok = ok && (edge & used) == 0;
      used |= edge;
    }
    if (ok) return true;
  } while (next_index(pick, dims));
  return false;
}

// Top coefficient of w(A_1) ^ ... ^ w(A_t) through the exterior algebra.
std::uint64_t wedge_entry(const std::vector<std::uint64_t>& edges, const std::vector<Vector>& points, unsigned n) {
  const auto& f = points.front().field;
  ExtVector acc = ExtVector::basis(f, n, 0);
  for (std::uint64_t e : edges) {
    std::vector<Vector> vs;
    for (unsigned x = 0; x < 64; ++x) {
      if ((e >> x) & 1U) vs.push_back(points[x]);
    }
    acc = wedge(acc, wedge_of_vectors(vs));
  }
  return acc.grade() == n ? top_coefficient(acc) : 0;
}

bool pairwise_disjoint(const std::vector<std::uint64_t>& edges) {
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      if ((edges[a] & edges[b]) != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rainbow matching examples") {
  ColoredHypergraph one{4, 2, 2, {{0b0011, 0b1100}}};
  const auto first = find_rainbow_matching(one, 1);
  REQUIRE(first.has_value());
  CHECK(*first == std::vector<RainbowEdge>{{0, 0}});
  CHECK_FALSE(find_rainbow_matching(one, 2).has_value());

  ColoredHypergraph two{4, 2, 2, {{0b0011, 0b1100}, {0b0011, 0b1100}}};
  const auto m = find_rainbow_matching(two, 2);
  REQUIRE(m.has_value());
  CHECK(m->size() == 2);
  CHECK((two.colors[(*m)[0].color][(*m)[0].edge] & two.colors[(*m)[1].color][(*m)[1].edge]) == 0);
  CHECK((*m)[0].color != (*m)[1].color);

  CHECK_THROWS_AS(find_rainbow_matching(one, 0), HypergraphError);
  CHECK_THROWS_AS(ColoredHypergraph({4, 2, 2, {{0b0011}}}).validate(), HypergraphError);
  CHECK_THROWS_AS(ColoredHypergraph({4, 2, 2, {{0b0011, 0b0110}}}).validate(), HypergraphError);
  CHECK_THROWS_AS(ColoredHypergraph({4, 2, 2, {{0b0011, 0b11000}}}).validate(), HypergraphError);
  CHECK_THROWS_AS(ColoredHypergraph({4, 2, 2, {{0b0111, 0b1000}}}).validate(), HypergraphError);
}

TEST_CASE("rainbow matching search agrees with enumeration") {
  flatrank::Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    auto h = gen::random_hypergraph(rng);
    if (h.z() > 6) h.colors.resize(6);
    for (std::size_t size = 1; size <= std::min<std::size_t>(h.t + 1, 4); ++size) {
      const auto found = find_rainbow_matching(h, size);
      CHECK(found.has_value() == naive_has_rainbow(h, size));
      if (found) {
        std::vector<std::uint64_t> edges;
        for (const auto& e : *found) edges.push_back(h.colors[e.color][e.edge]);
        CHECK(pairwise_disjoint(edges));
      }
    }
  }
}

TEST_CASE("rainbow tensor pattern and wedge agreement") {
  ColoredHypergraph shared{4, 2, 2, {{0b0011, 0b1100}, {0b0110, 0b1001}}};
  const auto t = rainbow_tensor(shared);
  CHECK(t.at({0, 1}) == 0);  // {0,1} and {0,3} share vertex 0
  CHECK(t.at({0, 0}) != 0);
  CHECK(rainbow_field(4).order() == 256);
  CHECK(rainbow_field(300).order() == 512);

  ColoredHypergraph single{5, 2, 1, {{0b00011}, {0b11000}, {0b00110}}};
  const auto ones = rainbow_tensor(single);
  for (std::size_t i = 0; i < 3; ++i) CHECK(ones.at({i}) != 0);

  flatrank::Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    auto h = gen::random_hypergraph(rng);
    if (h.z() > 5) h.colors.resize(5);
    const auto field = trial % 2 == 0 ? rainbow_field(h.vertices) : make_binary_field(4);
    const unsigned n = h.r * h.t;
    const auto tensor = rainbow_tensor(h, field);
    const auto points = moment_curve_vectors(h.vertices, n, field);
    std::vector<std::size_t> idx(h.t, 0);
    do {
      std::vector<std::uint64_t> edges;
      for (unsigned j = 0; j < h.t; ++j) edges.push_back(h.colors[idx[j]][j]);
      CHECK((tensor.at(idx) != 0) == pairwise_disjoint(edges));
      CHECK(tensor.at(idx) == wedge_entry(edges, points, n));
    } while (next_index(idx, tensor.dims()));
  }

  CHECK_THROWS_AS(rainbow_tensor(ColoredHypergraph{3, 2, 2, {}}), HypergraphError);
  CHECK_THROWS_AS(rainbow_tensor(shared, make_prime_field(5)), HypergraphError);
  CHECK_THROWS_AS(rainbow_tensor(shared, make_binary_field(2)), HypergraphError);
  ColoredHypergraph small{3, 2, 2, {}};
  CHECK_THROWS_AS(rainbow_tensor(small), HypergraphError);
}

TEST_CASE("rainbow bound examples") {
  CHECK(rainbow_bound(2, 2) == 6);
  CHECK(rainbow_bound(3, 3) == 168);
  CHECK((2 - 1) * (1U << 2) <= rainbow_bound(2, 2));
  CHECK(rainbow_bound(5, 1) == 0);
  CHECK_THROWS_AS(rainbow_bound(0, 2), HypergraphError);
}

TEST_CASE("bound chain without a rainbow matching") {
  // t - 1 = 1 color holding a perfect matching: no rainbow matching of size 2.
  ColoredHypergraph lone{4, 2, 2, {{0b0011, 0b1100}}};
  const auto report = certify_no_rainbow_bound(lone);
  CHECK_FALSE(report.matching.has_value());
  CHECK(report.semi_diagonal);
  CHECK(report.mfrank >= 1);
  CHECK(report.chain_holds);

  const auto found = certify_no_rainbow_bound(ColoredHypergraph{4, 2, 2, {{0b0011, 0b1100}, {0b0011, 0b1100}}});
  CHECK(found.matching.has_value());
  CHECK_FALSE(found.chain_holds);

  flatrank::Rng rng(79);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto h = gen::random_hypergraph(rng);
    const auto r = certify_no_rainbow_bound(h);
    if (r.matching) continue;
    ++checked;
    CHECK(r.semi_diagonal);
    CHECK(r.z <= (h.t - 1) * r.mfrank);
    CHECK(r.mfrank <= r.rank_upper_bound);
    CHECK(r.z <= r.size_bound);
    CHECK(r.chain_holds);
  }
  CHECK(checked > 0);
}

TEST_CASE("set-pair systems") {
  CHECK(bollobas_bound({1, 1}) == 2);
  CHECK(bollobas_bound({2, 2}) == 6);
  CHECK(bollobas_bound({1, 2}) == 3);
  CHECK(bollobas_bound({1, 1, 1}) == 6);

  SetPairSystem classic{2, {1, 1}, {{0b01, 0b10}, {0b10, 0b01}}};
  const auto ok = bollobas_verify(classic);
  CHECK(ok.hypothesis());
  CHECK(ok.semi_diagonal);
  CHECK(ok.size == ok.bound);
  CHECK(ok.verified());

  SetPairSystem repeated{2, {1, 1}, {{0b01, 0b10}, {0b01, 0b10}, {0b01, 0b10}}};
  const auto bad = bollobas_verify(repeated);
  CHECK_FALSE(bad.hypothesis());
  CHECK_FALSE(bad.cross_condition);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->size() == 2);
  CHECK_FALSE(bad.verified());

  SetPairSystem overlapping{3, {2, 1}, {{0b011, 0b001}}};
  const auto overlap = bollobas_verify(overlapping);
  CHECK_FALSE(overlap.members_disjoint);
  CHECK(overlap.violation == std::vector<std::size_t>{0});

  // All 2-subsets of [4] paired with their complements.
  SetPairSystem complements{4, {2, 2}, {}};
  for (std::uint64_t a = 0; a < 16; ++a) {
    if (popcount(a) == 2) complements.members.push_back({a, 0b1111 & ~a});
  }
  const auto full = bollobas_verify(complements);
  CHECK(full.hypothesis());
  CHECK(full.size == 6);
  CHECK(full.verified());
  CHECK(full.mfrank == 6);

  CHECK_THROWS_AS(bollobas_verify(SetPairSystem{2, {1}, {{0b01}}}), HypergraphError);
  CHECK_THROWS_AS(bollobas_bound({}), HypergraphError);
}
