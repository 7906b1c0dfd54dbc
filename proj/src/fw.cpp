#include "flatrank/fw.hpp"

#include <algorithm>
#include <functional>

#include "flatrank/combinatorics.hpp"
#include "flatrank/rng.hpp"

namespace flatrank {

namespace {

std::uint64_t swap_bits(std::uint64_t mask, unsigned i, unsigned j) {
  const std::uint64_t bi = (mask >> i) & 1U;
  const std::uint64_t bj = (mask >> j) & 1U;
  if (bi == bj) return mask;
  return mask ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
}

bool residue_in(const std::vector<std::uint64_t>& residues, std::uint64_t x) {
  return std::find(residues.begin(), residues.end(), x) != residues.end();
}

}  // namespace

void Configuration::validate() const {
  if (k < 1 || k > 63) throw ConfigurationError("configuration order k must be in [1, 63]");
  if (!is_prime(p) || p >= (std::uint64_t{1} << 31)) throw ConfigurationError("modulus p must be a prime below 2^31");
  for (std::uint64_t x : sets) {
    if (x == 0) throw ConfigurationError("configuration sets must be nonempty");
    if ((x & ~low_bits(k)) != 0) throw ConfigurationError("configuration set leaves [k]");
  }
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i] >= p) throw ConfigurationError("residue outside [0, p)");
    for (std::size_t j = 0; j < i; ++j) {
      if (residues[i] == residues[j]) throw ConfigurationError("repeated residue in L");
    }
  }
}

bool Configuration::is_symmetric() const {
  std::vector<std::uint64_t> sorted = sets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  // Adjacent transpositions generate the symmetric group.
  for (unsigned i = 0; i + 1 < k; ++i) {
    std::vector<std::uint64_t> image;
    image.reserve(sorted.size());
    for (std::uint64_t x : sorted) image.push_back(swap_bits(x, i, i + 1));
    std::sort(image.begin(), image.end());
    if (image != sorted) return false;
  }
  return true;
}

Configuration Configuration::frankl_wilson(std::uint64_t p, std::vector<std::uint64_t> residues) {
  return Configuration{2, {0b11}, p, std::move(residues)};
}

Configuration Configuration::k_wise(unsigned k, std::uint64_t p, std::vector<std::uint64_t> residues) {
  return Configuration{k, {low_bits(k)}, p, std::move(residues)};
}

Configuration Configuration::complete_graph(unsigned k, std::uint64_t p, std::vector<std::uint64_t> residues) {
  Configuration cfg{k, {}, p, std::move(residues)};
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = i + 1; j < k; ++j) cfg.sets.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
  }
  return cfg;
}

std::size_t config_degree(const Configuration& cfg, unsigned a) {
  if (a >= cfg.k) throw ConfigurationError("element outside [k]");
  return static_cast<std::size_t>(
      std::count_if(cfg.sets.begin(), cfg.sets.end(), [&](std::uint64_t x) { return (x >> a) & 1U; }));
}

std::size_t config_max_degree(const Configuration& cfg) {
  std::size_t best = 0;
  for (unsigned a = 0; a < cfg.k; ++a) best = std::max(best, config_degree(cfg, a));
  return best;
}

IntersectionPolynomial intersection_polynomial(const Configuration& cfg) {
  cfg.validate();
  return {make_prime_field(cfg.p), cfg.residues};
}

std::uint64_t eval_h(const IntersectionPolynomial& h, std::uint64_t x) {
  const auto& f = h.field;
  const std::uint64_t r = f.reduce(x);
  std::uint64_t acc = 1;
  for (std::uint64_t root : h.roots) acc = f.mul(acc, f.sub(r, root));
  return acc;
}

std::optional<ConfigViolation> config_violation(const SetFamily& family, const Configuration& cfg,
                                                Distinctness distinct, std::optional<std::size_t> must_include) {
  family.validate();
  cfg.validate();
  const std::size_t m = family.size();
  if (must_include && *must_include >= m) throw SetFamilyError("must_include position out of range");

  auto size_in_l = [&](std::size_t i) { return residue_in(cfg.residues, popcount(family.members[i]) % cfg.p); };
  if (must_include) {
    if (size_in_l(*must_include)) return ConfigViolation{ConfigViolation::Kind::MemberSizeInL, {*must_include}};
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      if (size_in_l(i)) return ConfigViolation{ConfigViolation::Kind::MemberSizeInL, {i}};
    }
  }

  const unsigned k = cfg.k;
  if (m < k) return std::nullopt;

  // Sets of C grouped by their largest element: they become checkable once
  // that slot is assigned.
  std::vector<std::vector<std::uint64_t>> closing(k);
  for (std::uint64_t x : cfg.sets) closing[static_cast<std::size_t>(63 - std::countl_zero(x))].push_back(x);

  const bool symmetric = cfg.is_symmetric();
  std::vector<std::size_t> slot(k);
  std::vector<bool> used(m, false);

  auto slot_ok = [&](unsigned depth) {
    const std::size_t pos = slot[depth];
    if (distinct == Distinctness::Sets) {
      for (unsigned j = 0; j < depth; ++j) {
        if (family.members[slot[j]] == family.members[pos]) return false;
      }
    }
    for (std::uint64_t x : closing[depth]) {
      std::uint64_t acc = ~std::uint64_t{0};
      for (unsigned j = 0; j <= depth; ++j) {
        if ((x >> j) & 1U) acc &= family.members[slot[j]];
      }
      if (residue_in(cfg.residues, popcount(acc) % cfg.p)) return false;
    }
    return true;
  };

  // A symmetric C lets the forced position sit in slot 0 and the others be
  // chosen in increasing order; otherwise every ordered tuple is tried.
  auto rec = [&](auto&& self, unsigned depth, std::size_t start, bool have_forced) -> bool {
    if (depth == k) return !must_include || have_forced;
    const std::size_t remaining = k - depth;
    if (symmetric && must_include && depth == 0) {
      slot[0] = *must_include;
      used[*must_include] = true;
      const bool hit = slot_ok(0) && self(self, 1, 0, true);
      used[*must_include] = false;
      return hit;
    }
    for (std::size_t i = symmetric ? start : 0; i < m; ++i) {
      if (used[i]) continue;
      if (symmetric && m - i < remaining) break;
      if (must_include && !have_forced && remaining == 1 && i != *must_include) continue;
      slot[depth] = i;
      used[i] = true;
      const bool hit = slot_ok(depth) && self(self, depth + 1, i + 1, have_forced || (must_include && i == *must_include));
      used[i] = false;
      if (hit) return true;
    }
    return false;
  };

  if (rec(rec, 0, 0, false)) return ConfigViolation{ConfigViolation::Kind::ForbiddenTuple, slot};
  return std::nullopt;
}

bool is_config_satisfying(const SetFamily& family, const Configuration& cfg, Distinctness distinct) {
  return !config_violation(family, cfg, distinct).has_value();
}

Tensor fw_tensor(const SetFamily& family, const Configuration& cfg) {
  family.validate();
  const auto h = intersection_polynomial(cfg);
  if (family.members.empty()) throw SetFamilyError("configuration tensor of an empty family");
  Tensor t = Tensor::cube(family.size(), cfg.k, h.field);
  std::vector<std::size_t> index(cfg.k, 0);
  std::size_t off = 0;
  do {
    std::uint64_t value = 1;
    for (std::uint64_t x : cfg.sets) {
      std::uint64_t acc = ~std::uint64_t{0};
      for (unsigned j = 0; j < cfg.k; ++j) {
        if ((x >> j) & 1U) acc &= family.members[index[j]];
      }
      value = h.field.mul(value, eval_h(h, static_cast<std::uint64_t>(popcount(acc))));
      if (value == 0) break;
    }
    t.set_offset(off++, value);
  } while (next_index(index, t.dims()));
  return t;
}

std::uint64_t fw_flattening_bound(const Configuration& cfg, unsigned n, unsigned j) {
  return binomial_prefix_sum(n, config_degree(cfg, j) * cfg.residues.size());
}

std::uint64_t fw_size_bound(const Configuration& cfg, unsigned n) {
  if (cfg.k < 1) throw ConfigurationError("configuration order must be positive");
  return checked_mul(cfg.k - 1, binomial_prefix_sum(n, config_max_degree(cfg) * cfg.residues.size()));
}

// -- bad boxes --------------------------------------------------------------

std::uint64_t flatten_product(const ProductSet& set, unsigned t) {
  const std::size_t s = set.factors.size();
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < s; ++i) points = checked_mul(points, t);
  if (points > 63) throw SetFamilyError("product ground set t^s exceeds 63 elements");
  std::uint64_t out = 0;
  std::vector<unsigned> coord(s, 0);
  for (std::uint64_t x = 0; x < points; ++x) {
    bool inside = true;
    for (std::size_t i = 0; i < s && inside; ++i) inside = (set.factors[i] >> coord[i]) & 1U;
    if (inside) out |= std::uint64_t{1} << x;
    for (std::size_t i = s; i-- > 0;) {
      if (++coord[i] < t) break;
      coord[i] = 0;
    }
  }
  return out;
}

std::vector<std::uint64_t> odd_subsets(unsigned t) {
  if (t < 1 || t > 20) throw SetFamilyError("odd_subsets needs 1 <= t <= 20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << t); ++m) {
    if (popcount(m) % 2 == 1) out.push_back(m);
  }
  return out;
}

std::size_t badbox_k(unsigned t) {
  if (t < 2 || t > 62) throw SetFamilyError("bad-box parameter t must be in [2, 62]");
  return static_cast<std::size_t>((std::uint64_t{1} << (t + 1)) / (t - 1));
}

std::size_t badbox_target_size(unsigned t, unsigned s) {
  if (t < 2) throw SetFamilyError("bad-box parameter t must be at least 2");
  const unsigned q = (t - 1) * s;
  if (q > 60) throw SetFamilyError("bad-box target size too large");
  // smallest m with m^4 >= 2^q
  const unsigned __int128 goal = static_cast<unsigned __int128>(1) << q;
  std::size_t m = 1;
  auto fourth = [](std::size_t x) {
    const auto v = static_cast<unsigned __int128>(x);
    return v * v * v * v;
  };
  while (fourth(m) < goal) ++m;
  return m;
}

SetFamily BadboxFamily::as_set_family() const {
  std::uint64_t points = 1;
  for (unsigned i = 0; i < s; ++i) points *= t;
  SetFamily out{static_cast<unsigned>(points), {}};
  for (const auto& m : members) out.members.push_back(flatten_product(m, t));
  return out;
}

namespace {

bool odd_intersection(const ProductSet& a, const ProductSet& b) {
  if (a.factors.size() != b.factors.size()) throw SetFamilyError("product sets with different numbers of factors");
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (popcount(a.factors[i] & b.factors[i]) % 2 == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_odd_clique(const std::vector<ProductSet>& members, std::size_t k) {
  const std::size_t m = members.size();
  if (k == 0) return std::vector<std::size_t>{};
  if (m < k) return std::nullopt;
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = odd_intersection(members[i], members[j]);
  }
  std::vector<std::size_t> clique;
  std::function<bool(const std::vector<std::size_t>&)> extend = [&](const std::vector<std::size_t>& candidates) {
    if (clique.size() == k) return true;
    if (clique.size() + candidates.size() < k) return false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const std::size_t v = candidates[c];
      std::vector<std::size_t> next;
      for (std::size_t d = c + 1; d < candidates.size(); ++d) {
        if (adj[v][candidates[d]]) next.push_back(candidates[d]);
      }
      clique.push_back(v);
      if (extend(next)) return true;
      clique.pop_back();
    }
    return false;
  };
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  if (extend(all)) return clique;
  return std::nullopt;
}

bool verify_badbox_free(const std::vector<ProductSet>& members, std::size_t k) {
  return !find_odd_clique(members, k).has_value();
}

BadboxFamily sample_badbox_family(unsigned t, unsigned s, std::uint64_t seed, std::size_t max_attempts) {
  if (s < 1) throw SetFamilyError("bad-box parameter s must be at least 1");
  const std::size_t k = badbox_k(t);
  const std::size_t target = badbox_target_size(t, s);
  const auto pool = odd_subsets(t);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed + attempt);
    std::vector<ProductSet> members(target);
    for (auto& member : members) {
      member.factors.resize(s);
      for (auto& f : member.factors) f = pool[static_cast<std::size_t>(rng.uniform(pool.size()))];
    }
    if (verify_badbox_free(members, k)) return BadboxFamily{t, s, k, seed, attempt + 1, std::move(members)};
  }
  throw BadboxSamplingError("no bad-box-free sample within " + std::to_string(max_attempts) + " attempts",
                            max_attempts);
}

}  // namespace flatrank
