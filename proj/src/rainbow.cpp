#include "flatrank/rainbow.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "flatrank/combinatorics.hpp"
#include "flatrank/extalg.hpp"
#include "flatrank/linalg.hpp"

namespace flatrank {

namespace {

// Stacks the vertex vectors of the given masks (in order, ascending vertex
// within a mask) and returns the determinant; the masks must hold exactly
// n vertices in total.
std::uint64_t stacked_determinant(std::span<const std::uint64_t> masks, const std::vector<Vector>& points,
                                  const FieldDescriptor& field, unsigned n) {
  Matrix m(field, n, n);
  std::size_t row = 0;
  for (std::uint64_t mask : masks) {
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto x = static_cast<std::size_t>(std::countr_zero(rest));
      for (unsigned c = 0; c < n; ++c) m(row, c) = points[x].coords[c];
      ++row;
    }
  }
  return determinant(std::move(m));
}

}  // namespace

void ColoredHypergraph::validate() const {
  if (vertices > 63) throw HypergraphError("at most 63 vertices are supported");
  if (r < 1) throw HypergraphError("uniformity r must be positive");
  if (t < 1) throw HypergraphError("matching size t must be positive");
  const std::uint64_t ground = low_bits(vertices);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const auto& cls = colors[i];
    if (cls.size() != t) {
      throw HypergraphError("color " + std::to_string(i) + " has " + std::to_string(cls.size()) + " edges, expected " +
                            std::to_string(t));
    }
    std::uint64_t used = 0;
    for (std::uint64_t e : cls) {
      if ((e & ~ground) != 0) throw HypergraphError("edge uses a vertex outside [0, N)");
      if (static_cast<unsigned>(popcount(e)) != r) throw HypergraphError("edge size differs from r");
      if ((used & e) != 0) throw HypergraphError("color " + std::to_string(i) + " is not a matching");
      used |= e;
    }
  }
}

std::optional<std::vector<RainbowEdge>> find_rainbow_matching(const ColoredHypergraph& h, std::size_t size) {
  h.validate();
  if (size < 1) throw HypergraphError("rainbow matching size must be positive");
  if (size > h.z()) return std::nullopt;
  std::vector<RainbowEdge> chosen;
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t next_color, std::uint64_t used) {
    if (chosen.size() == size) return true;
    for (std::size_t c = next_color; c + (size - chosen.size()) <= h.z(); ++c) {
      for (std::size_t e = 0; e < h.colors[c].size(); ++e) {
        const std::uint64_t edge = h.colors[c][e];
        if ((edge & used) != 0) continue;
        chosen.push_back({c, e});
        if (rec(c + 1, used | edge)) return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  if (rec(0, 0)) return chosen;
  return std::nullopt;
}

FieldDescriptor rainbow_field(unsigned vertices) {
  int k = 8;
  while (k < 63 && (std::uint64_t{1} << k) <= vertices) ++k;
  return make_binary_field(k);
}

Tensor rainbow_tensor(const ColoredHypergraph& h, const FieldDescriptor& field) {
  h.validate();
  if (h.z() == 0) throw HypergraphError("hypergraph has no colors");
  const unsigned n = h.r * h.t;
  if (h.vertices < n) throw HypergraphError("need at least rt vertices");
  if (field.characteristic() != 2) throw HypergraphError("rainbow tensor needs characteristic 2");
  if (field.order() <= h.vertices) throw HypergraphError(field.name() + " is too small for general position");
  const auto points = moment_curve_vectors(h.vertices, n, field);
  Tensor out = Tensor::cube(h.z(), h.t, field);
  std::vector<std::size_t> index(h.t, 0);
  std::vector<std::uint64_t> masks(h.t);
  std::size_t off = 0;
  do {
    for (unsigned j = 0; j < h.t; ++j) masks[j] = h.colors[index[j]][j];
    out.set_offset(off++, stacked_determinant(masks, points, field, n));
  } while (next_index(index, out.dims()));
  return out;
}

std::uint64_t rainbow_bound(std::uint64_t r, std::uint64_t t) {
  if (r < 1 || t < 1) throw HypergraphError("rainbow bound needs r, t >= 1");
  return checked_mul(t - 1, binomial(r * t, r));
}

RainbowReport certify_no_rainbow_bound(const ColoredHypergraph& h, const FieldDescriptor& field) {
  RainbowReport report;
  report.z = h.z();
  report.r = h.r;
  report.t = h.t;
  report.field = field.name();
  report.rank_upper_bound = binomial(static_cast<std::uint64_t>(h.r) * h.t, h.r);
  report.size_bound = rainbow_bound(h.r, h.t);
  report.matching = find_rainbow_matching(h, h.t);
  if (report.matching) return report;
  // Without a rainbow matching of size t >= 1 a single color would already
  // give one, so t >= 2 here whenever z >= 1.
  const Tensor tensor = rainbow_tensor(h, field);
  report.semi_diagonal = is_semi_diagonal(tensor);
  report.ranks = flattening_ranks(tensor);
  report.mfrank = *std::max_element(report.ranks.begin(), report.ranks.end());
  report.rank_lower_bound = ceil_div(report.z, h.t - 1);
  const bool ranks_bounded = std::all_of(report.ranks.begin(), report.ranks.end(),
                                         [&](std::size_t rk) { return rk <= report.rank_upper_bound; });
  report.chain_holds = report.semi_diagonal && report.z <= (h.t - 1) * report.mfrank && ranks_bounded &&
                       report.z <= report.size_bound;
  return report;
}

// -- set-pair systems ------------------------------------------------------

void SetPairSystem::validate() const {
  if (ground > 63) throw HypergraphError("ground set size must be at most 63");
  if (sizes.empty()) throw HypergraphError("set-pair system needs t >= 1 slots");
  for (const auto& member : members) {
    if (member.size() != sizes.size()) throw HypergraphError("member does not have t slots");
    for (std::uint64_t s : member) {
      if ((s & ~low_bits(ground)) != 0) throw HypergraphError("slot leaves the ground set");
    }
  }
}

std::uint64_t bollobas_bound(const std::vector<unsigned>& sizes) {
  if (sizes.empty()) throw HypergraphError("set-pair system needs t >= 1 slots");
  std::uint64_t total = 0;
  for (unsigned r : sizes) total += r;
  std::uint64_t best = 0;
  for (unsigned r : sizes) best = std::max(best, binomial(total, r));
  return checked_mul(sizes.size() - 1, best);
}

Tensor bollobas_tensor(const SetPairSystem& system, const FieldDescriptor& field) {
  system.validate();
  if (system.members.empty()) throw HypergraphError("set-pair system is empty");
  unsigned n = 0;
  for (unsigned r : system.sizes) n += r;
  for (const auto& member : system.members) {
    for (std::size_t i = 0; i < member.size(); ++i) {
      if (static_cast<unsigned>(popcount(member[i])) != system.sizes[i]) {
        throw HypergraphError("slot size differs from r_i");
      }
    }
  }
  if (field.characteristic() != 2) throw HypergraphError("set-pair tensor needs characteristic 2");
  if (field.order() <= system.ground) throw HypergraphError(field.name() + " is too small for general position");
  const auto points = moment_curve_vectors(system.ground, n, field);
  const std::size_t t = system.t();
  Tensor out = Tensor::cube(system.members.size(), t, field);
  std::vector<std::size_t> index(t, 0);
  std::vector<std::uint64_t> masks(t);
  std::size_t off = 0;
  do {
    for (std::size_t j = 0; j < t; ++j) masks[j] = system.members[index[j]][j];
    // Fewer than n distinct vertices can never be independent.
    std::uint64_t all = 0;
    for (std::uint64_t m : masks) all |= m;
    const bool enough = static_cast<unsigned>(popcount(all)) == n;
    out.set_offset(off++, enough ? stacked_determinant(masks, points, field, n) : 0);
  } while (next_index(index, out.dims()));
  return out;
}

bool BollobasReport::verified() const noexcept {
  if (!hypothesis() || !semi_diagonal) return false;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] > rank_upper_bounds[i]) return false;
  }
  const std::size_t t = ranks.size();
  return size <= (t - 1) * mfrank && size <= bound;
}

BollobasReport bollobas_verify(const SetPairSystem& system) {
  system.validate();
  const std::size_t t = system.t();
  if (t < 2) throw HypergraphError("set-pair inequality needs t >= 2");
  BollobasReport report;
  report.size = system.members.size();
  report.bound = bollobas_bound(system.sizes);
  unsigned n = 0;
  for (unsigned r : system.sizes) n += r;
  for (unsigned r : system.sizes) report.rank_upper_bounds.push_back(binomial(n, r));

  report.sizes_ok = true;
  report.members_disjoint = true;
  for (std::size_t a = 0; a < system.members.size() && !report.violation; ++a) {
    const auto& member = system.members[a];
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (static_cast<unsigned>(popcount(member[i])) != system.sizes[i]) report.sizes_ok = false;
      if ((used & member[i]) != 0) report.members_disjoint = false;
      used |= member[i];
    }
    if (!report.sizes_ok || !report.members_disjoint) report.violation = std::vector<std::size_t>{a};
  }

  report.cross_condition = true;
  if (!report.violation) {
    // Look for t distinct positions whose cross slots are pairwise disjoint.
    const std::size_t m = system.members.size();
    std::vector<std::size_t> pos(t);
    std::vector<bool> used_pos(m, false);
    std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t depth, std::uint64_t used) {
      if (depth == t) return true;
      for (std::size_t a = 0; a < m; ++a) {
        if (used_pos[a]) continue;
        const std::uint64_t slot = system.members[a][depth];
        if ((slot & used) != 0) continue;
        used_pos[a] = true;
        pos[depth] = a;
        const bool hit = rec(depth + 1, used | slot);
        used_pos[a] = false;
        if (hit) return true;
      }
      return false;
    };
    if (t <= m && rec(0, 0)) {
      report.cross_condition = false;
      report.violation = pos;
    }
  }

  if (report.sizes_ok && !system.members.empty()) {
    const FieldDescriptor field = rainbow_field(system.ground);
    report.field = field.name();
    const Tensor tensor = bollobas_tensor(system, field);
    report.semi_diagonal = is_semi_diagonal(tensor);
    report.ranks = flattening_ranks(tensor);
    report.mfrank = *std::max_element(report.ranks.begin(), report.ranks.end());
  }
  return report;
}

}  // namespace flatrank
