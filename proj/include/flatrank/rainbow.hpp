#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatrank/field.hpp"
#include "flatrank/tensor.hpp"

namespace flatrank {

class HypergraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// r-uniform multi-hypergraph on [0, N) with a (z, t)-coloring: colors[i] is
/// the ordered matching A_{i,0}, ..., A_{i,t-1} of color i, edges as masks.
struct ColoredHypergraph {
  unsigned vertices = 0;
  unsigned r = 0;
  unsigned t = 0;
  std::vector<std::vector<std::uint64_t>> colors;

  std::size_t z() const noexcept { return colors.size(); }
  /// Throws HypergraphError unless every color class is a matching of t
  /// edges of size r inside [0, N), N <= 63.
  void validate() const;
  friend bool operator==(const ColoredHypergraph&, const ColoredHypergraph&) = default;
};

struct RainbowEdge {
  std::size_t color;
  std::size_t edge;
  friend bool operator==(const RainbowEdge&, const RainbowEdge&) = default;
};

/// `size` pairwise disjoint edges of distinct colors, by exhaustive
/// backtracking over colors in increasing order.
std::optional<std::vector<RainbowEdge>> find_rainbow_matching(const ColoredHypergraph& h, std::size_t size);

/// GF(2^k) with k the smallest integer such that 2^k > N, at least 8.
FieldDescriptor rainbow_field(unsigned vertices);

/// Order-t tensor on [z]^t: entry (i_1..i_t) is the top coefficient of
/// w(A_{i_1,0}) ^ ... ^ w(A_{i_t,t-1}) in the exterior algebra of F^(rt),
/// with vertex x mapped to the moment-curve point of parameter x + 1.
/// Computed as the rt x rt determinant of the stacked vertex vectors.
Tensor rainbow_tensor(const ColoredHypergraph& h, const FieldDescriptor& field);
inline Tensor rainbow_tensor(const ColoredHypergraph& h) { return rainbow_tensor(h, rainbow_field(h.vertices)); }

/// (t - 1) C(rt, r).
std::uint64_t rainbow_bound(std::uint64_t r, std::uint64_t t);

struct RainbowReport {
  std::size_t z = 0;
  unsigned r = 0;
  unsigned t = 0;
  std::string field;
  /// Present when H has a rainbow matching of size t; the rest is then
  /// left at defaults.
  std::optional<std::vector<RainbowEdge>> matching;
  bool semi_diagonal = false;
  std::vector<std::size_t> ranks;
  std::size_t mfrank = 0;
  /// ceil(z / (t - 1)) <= mfrank
  std::uint64_t rank_lower_bound = 0;
  /// C(rt, r) >= every flattening rank
  std::uint64_t rank_upper_bound = 0;
  /// (t - 1) C(rt, r) >= z
  std::uint64_t size_bound = 0;
  bool chain_holds = false;
};

/// Runs the bound chain z <= (t-1) mfrank(T) <= (t-1) C(rt, r) on H.
RainbowReport certify_no_rainbow_bound(const ColoredHypergraph& h, const FieldDescriptor& field);
inline RainbowReport certify_no_rainbow_bound(const ColoredHypergraph& h) {
  return certify_no_rainbow_bound(h, rainbow_field(h.vertices));
}

// -- set-pair systems ------------------------------------------------------

/// Family of t-tuples of subsets of a ground set [0, N), slot i of size r_i.
struct SetPairSystem {
  unsigned ground = 0;
  std::vector<unsigned> sizes;
  std::vector<std::vector<std::uint64_t>> members;

  std::size_t t() const noexcept { return sizes.size(); }
  void validate() const;
};

/// (t - 1) max_i C(r_1 + ... + r_t, r_i).
std::uint64_t bollobas_bound(const std::vector<unsigned>& sizes);

/// Entry (i_1..i_t) is the top coefficient of the wedge of
/// w(A_{i_1}(0)), ..., w(A_{i_t}(t-1)) in the exterior algebra of F^n,
/// n = r_1 + ... + r_t.
Tensor bollobas_tensor(const SetPairSystem& system, const FieldDescriptor& field);

struct BollobasReport {
  std::size_t size = 0;
  bool sizes_ok = false;
  bool members_disjoint = false;
  bool cross_condition = false;
  /// A member with wrong sizes or overlapping slots, or t distinct positions
  /// whose cross slots are pairwise disjoint.
  std::optional<std::vector<std::size_t>> violation;
  std::uint64_t bound = 0;
  std::string field;
  bool semi_diagonal = false;
  std::vector<std::size_t> ranks;
  std::size_t mfrank = 0;
  /// C(n, r_i) per axis.
  std::vector<std::uint64_t> rank_upper_bounds;

  bool hypothesis() const noexcept { return sizes_ok && members_disjoint && cross_condition; }
  /// Hypothesis holds, the tensor is semi-diagonal, its ranks respect the
  /// per-axis bounds and size <= bound.
  bool verified() const noexcept;
};

BollobasReport bollobas_verify(const SetPairSystem& system);

}  // namespace flatrank
