// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are exact (zero violations) throughout; the
// runtime limits are wall-clock seconds on a single core.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../common/generators.hpp"
#include "../common/oddtown_enum.hpp"
#include "../common/oracles.hpp"
#include "flatrank/combinatorics.hpp"
#include "flatrank/extalg.hpp"
#include "flatrank/fw.hpp"
#include "flatrank/io.hpp"
#include "flatrank/rainbow.hpp"
#include "flatrank/search.hpp"
#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

using namespace flatrank;
using io::Json;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  Json report;
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// AC1: partition tensors attain ceil(a/(d-1)) exactly.
Outcome ac1() {
  Outcome out;
  int cases = 0;
  int bad = 0;
  for (const auto& f : {make_prime_field(2), make_prime_field(3)}) {
    for (std::size_t a = 1; a <= 8; ++a) {
      for (std::size_t d = 2; d <= 4; ++d) {
        const auto t = partition_construction(a, d, f);
        const std::size_t want = ceil_div(a, d - 1);
        ++cases;
        if (!is_semi_diagonal(t) || max_flattening_rank(t) != want) {
          ++bad;
          out.detail += " [" + f.name() + " a=" + std::to_string(a) + " d=" + std::to_string(d) + "]";
        }
      }
    }
  }
  out.ok = bad == 0;
  out.detail = std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches" + out.detail;
  return out;
}

// AC2: exhaustive |A| = 3, d = 3 over GF(2).
Outcome ac2() {
  Outcome out;
  const auto r = exhaustive_min_mfrank(3, 3);
  out.ok = r.examined == 262144 && r.min_mfrank == 2u && r.min_sum_frank && *r.min_sum_frank >= 5 &&
           r.violations == 0;
  out.detail = "examined " + std::to_string(r.examined) + ", min mfrank " + std::to_string(r.min_mfrank.value_or(0)) +
               " (want 2), min sum " + std::to_string(r.min_sum_frank.value_or(0)) + " (want >= 5)";
  return out;
}

// AC3: 10^5 random semi-diagonal tensors per shape.
Outcome ac3() {
  Outcome out;
  out.report = Json::array();
  const std::pair<std::size_t, std::size_t> shapes[] = {{4, 3}, {5, 3}, {4, 4}};
  std::uint64_t seed = 3001;
  for (const auto& [a, d] : shapes) {
    const auto r = random_semidiagonal_sweep(a, d, make_prime_field(2), 100000, seed++);
    const bool shape_ok = r.min_mfrank && *r.min_mfrank >= ceil_div(a, d - 1) && r.violations == 0;
    out.ok = out.ok && shape_ok;
    out.detail += "(" + std::to_string(a) + "," + std::to_string(d) + "): min mfrank " +
                  std::to_string(r.min_mfrank.value_or(0)) + " >= " + std::to_string(ceil_div(a, d - 1)) + ", " +
                  std::to_string(r.violations) + " violations; ";
    out.report.push_back(io::search_report_to_json(r));
  }
  return out;
}

// AC4: every cross-Oddtown family with n <= 4, d <= 3, size <= 6.
Outcome ac4() {
  Outcome out;
  std::uint64_t families = 0;
  std::uint64_t bad = 0;
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::size_t d = 2; d <= 3; ++d) {
      const oddenum::Enumerator e(n, d, 6);
      const std::uint64_t bound = cross_oddtown_bound(n, d);
      e.run([&](const std::vector<oddenum::Tuple>& members) {
        ++families;
        const TupleFamily f{n, d, members};
        if (!is_cross_oddtown(f)) {
          ++bad;
          return;
        }
        const auto t = oddtown_tensor(f);
        const bool fine = is_semi_diagonal(t) && reconstruct_certificate(f, oddtown_rank1_certificate(f)) == t &&
                          max_flattening_rank(t) <= n && f.size() <= bound;
        if (!fine) ++bad;
      });
    }
  }
  bool tight = true;
  for (unsigned n = 1; n <= 4; ++n) {
    const auto rep = repeated_singletons(n, 3, 2);
    tight = tight && is_cross_oddtown(rep) && rep.size() == 2 * n && rep.size() == cross_oddtown_bound(n, 3);
  }
  out.ok = bad == 0 && tight;
  out.detail = std::to_string(families) + " families up to relabelling, " + std::to_string(bad) +
               " failures; repeated singletons reach 2n at d=3: " + (tight ? "yes" : "no");
  return out;
}

// AC5: configuration-tensor chain on 200 random satisfying families with at
// least k members each.
Outcome ac5() {
  Outcome out;
  out.report = Json::array();
  Rng rng(5005);
  int instances = 0;
  int bad = 0;
  while (instances < 200) {
    const auto cfg = gen::random_configuration(rng);
    const unsigned n = 1 + static_cast<unsigned>(rng.uniform(6));
    const auto family = gen::greedy_satisfying_family(cfg, n, 48, rng);
    // Fewer than k members leaves no all-distinct index to test.
    if (family.size() < cfg.k) continue;
    ++instances;
    const bool satisfying = is_config_satisfying(family, cfg);
    const auto t = fw_tensor(family, cfg);
    const auto ranks = flattening_ranks(t);
    bool fine = satisfying && is_semi_diagonal(t) && family.size() <= fw_size_bound(cfg, n);
    for (unsigned j = 0; j < cfg.k; ++j) fine = fine && ranks[j] <= fw_flattening_bound(cfg, n, j);
    if (!fine) ++bad;
    out.report.push_back(Json{{"configuration", io::configuration_to_json(cfg)},
                              {"n", n},
                              {"size", family.size()},
                              {"ranks", ranks},
                              {"size_bound", fw_size_bound(cfg, n)}});
  }
  out.ok = bad == 0;
  out.detail = std::to_string(instances) + " instances, " + std::to_string(bad) + " failures";
  return out;
}

// AC6: bad-box sampler at three parameter pairs.
Outcome ac6() {
  Outcome out;
  out.report = Json::array();
  const std::pair<unsigned, unsigned> params[] = {{3, 1}, {3, 2}, {5, 2}};
  for (const auto& [t, s] : params) {
    const auto start = std::chrono::steady_clock::now();
    bool fine = false;
    std::string note;
    try {
      const auto fam = sample_badbox_family(t, s, 6006);
      const auto cfg = Configuration::complete_graph(static_cast<unsigned>(fam.k), 2, {0});
      fine = fam.members.size() == badbox_target_size(t, s) && fam.attempts <= kBadboxMaxAttempts &&
             verify_badbox_free(fam.members, fam.k) &&
             is_config_satisfying(fam.as_set_family(), cfg, Distinctness::Positions);
      note = "size " + std::to_string(fam.members.size()) + ", k " + std::to_string(fam.k) + ", attempts " +
             std::to_string(fam.attempts);
      out.report.push_back(io::badbox_family_to_json(fam));
    } catch (const BadboxSamplingError& e) {
      note = e.what();
    }
    const double elapsed = seconds_since(start);
    fine = fine && elapsed < 60.0;
    out.ok = out.ok && fine;
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.2f s", elapsed);
    out.detail += "(" + std::to_string(t) + "," + std::to_string(s) + "): " + note + buf + "; ";
  }
  return out;
}

bool pairwise_disjoint(const std::vector<std::uint64_t>& edges) {
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      if ((edges[a] & edges[b]) != 0) return false;
    }
  }
  return true;
}

// AC7: rainbow tensor pattern and bound chain on 500 random instances.
Outcome ac7() {
  Outcome out;
  out.report = Json::array();
  Rng rng(7007);
  int pattern_bad = 0;
  int chain_bad = 0;
  int without_matching = 0;
  for (int instance = 0; instance < 500; ++instance) {
    const auto h = gen::random_hypergraph(rng);
    const auto t = rainbow_tensor(h);
    std::vector<std::size_t> idx(h.t, 0);
    std::vector<std::uint64_t> edges(h.t);
    bool pattern = true;
    do {
      for (unsigned j = 0; j < h.t; ++j) edges[j] = h.colors[idx[j]][j];
      pattern = pattern && ((t.at(idx) != 0) == pairwise_disjoint(edges));
    } while (next_index(idx, t.dims()));
    if (!pattern) ++pattern_bad;

    const auto matching = find_rainbow_matching(h, h.t);
    Json row{{"r", h.r}, {"t", h.t}, {"N", h.vertices}, {"z", h.z()}, {"rainbow", matching.has_value()}};
    if (!matching) {
      ++without_matching;
      const std::size_t m = max_flattening_rank(t);
      const std::uint64_t cap = binomial(std::uint64_t{h.r} * h.t, h.r);
      const bool chain = is_semi_diagonal(t) && h.z() <= (h.t - 1) * m && m <= cap;
      if (!chain) ++chain_bad;
      row["mfrank"] = m;
    }
    out.report.push_back(row);
  }
  out.ok = pattern_bad == 0 && chain_bad == 0;
  out.detail = "500 instances, pattern mismatches " + std::to_string(pattern_bad) + "; " +
               std::to_string(without_matching) + " without a rainbow matching, chain failures " +
               std::to_string(chain_bad);
  return out;
}

std::uint64_t minor_of(const std::vector<Vector>& vs, std::uint64_t subset) {
  oracle::Mat m;
  for (const auto& v : vs) m.push_back(v.coords);
  std::vector<std::size_t> rows(vs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < vs.front().coords.size(); ++c) {
    if ((subset >> c) & 1U) cols.push_back(c);
  }
  return oracle::minor(vs.front().field, m, rows, cols);
}

// AC8: exterior-algebra axioms on 10^4 random triples per field.
Outcome ac8() {
  Outcome out;
  Json counts = Json::object();
  std::uint64_t total_bad = 0;
  std::uint64_t seed = 8008;
  for (int k : {3, 8}) {
    const auto f = make_binary_field(k);
    Rng rng(seed++);
    std::uint64_t bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const unsigned n = 2 + static_cast<unsigned>(rng.uniform(5));
      const unsigned ga = static_cast<unsigned>(rng.uniform(n + 1));
      const unsigned gb = static_cast<unsigned>(rng.uniform(n - ga + 1));
      const unsigned gc = static_cast<unsigned>(rng.uniform(n - ga - gb + 1));
      const auto a = gen::random_ext(f, n, ga, rng);
      const auto b = gen::random_ext(f, n, gb, rng);
      const auto b2 = gen::random_ext(f, n, gb, rng);
      const auto c = gen::random_ext(f, n, gc, rng);
      bool fine = wedge(wedge(a, b), c) == wedge(a, wedge(b, c));
      fine = fine && wedge(a, b + b2) == wedge(a, b) + wedge(a, b2);
      const std::uint64_t lambda = rng.uniform(f.order());
      fine = fine && wedge(a.scaled(lambda), b) == wedge(a, b).scaled(lambda);
      fine = fine && wedge(a, b) == wedge(b, a);
      fine = fine && a.dimension() == binomial(n, ga);

      // k random vectors, the last optionally a combination of the others.
      const std::size_t m = 1 + rng.uniform(n);
      std::vector<Vector> vs;
      for (std::size_t i = 0; i < m; ++i) vs.push_back(gen::random_vector(f, n, rng));
      const bool make_dependent = m >= 2 && rng.coin();
      if (make_dependent) {
        Vector combo{f, std::vector<std::uint64_t>(n, 0)};
        for (std::size_t i = 0; i + 1 < m; ++i) {
          const std::uint64_t lambda = rng.uniform(f.order());
          for (unsigned x = 0; x < n; ++x) combo.coords[x] = f.add(combo.coords[x], f.mul(lambda, vs[i].coords[x]));
        }
        vs.back() = combo;
      }
      const auto w = wedge_of_vectors(vs);
      if (make_dependent) fine = fine && w.is_zero();
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
        if (popcount(subset) == static_cast<int>(m)) fine = fine && w.coefficient(subset) == minor_of(vs, subset);
      }
      const auto v = ExtVector::from_vector(vs.front());
      fine = fine && wedge(v, v).is_zero();
      if (!fine) ++bad;
    }
    counts[f.name()] = bad;
    total_bad += bad;
  }
  out.ok = total_bad == 0;
  out.detail = "2 x 10000 triples, " + std::to_string(total_bad) + " violations";
  out.report = counts;
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"AC1", "partition construction attains ceil(a/(d-1))", 5.0, ac1},
      {"AC2", "exhaustive |A|=3, d=3 over GF(2)", 60.0, ac2},
      {"AC3", "random semi-diagonal lower bound", 120.0, ac3},
      {"AC4", "cross-Oddtown chain, exhaustive small families", 60.0, ac4},
      {"AC5", "configuration tensor chain", 120.0, ac5},
      {"AC6", "bad-box sampler", 180.0, ac6},
      {"AC7", "rainbow tensor chain", 180.0, ac7},
      {"AC8", "exterior algebra axioms", 60.0, ac8},
  };

  bool all_ok = true;
  std::vector<std::pair<const Criterion*, std::string>> randomized;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(start);
    const bool pass = o.ok && elapsed < c.limit_seconds;
    all_ok = all_ok && pass;
    std::printf("%s %s: %s | %s | %.2f s (limit %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                elapsed, c.limit_seconds);
    std::fflush(stdout);
    if (!o.report.is_null()) randomized.emplace_back(&c, io::dump(o.report));
  }

  // AC9: rerun every randomized criterion with the same seeds.
  {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    for (const auto& [c, first] : randomized) {
      const auto again = io::dump(c->run().report);
      const bool same = again == first;
      ok = ok && same;
      detail += std::string(c->id) + (same ? " identical" : " DIFFERS") + " (" + std::to_string(first.size()) +
                " bytes); ";
    }
    const double elapsed = seconds_since(start);
    all_ok = all_ok && ok;
    std::printf("AC9 %s: same-seed reruns are byte-identical | %s| %.2f s\n", ok ? "PASS" : "FAIL", detail.c_str(),
                elapsed);
  }
  return all_ok ? 0 : 1;
}
