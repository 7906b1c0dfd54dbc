#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

namespace flatrank {

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration (C, L) of order k modulo a prime p: C is a family of
/// nonempty subsets of [0, k) given as masks, L a set of residues.
struct Configuration {
  unsigned k = 2;
  std::vector<std::uint64_t> sets;
  std::uint64_t p = 2;
  std::vector<std::uint64_t> residues;

  void validate() const;
  /// C invariant under every permutation of [0, k).
  bool is_symmetric() const;

  /// ({{0,1}}, L): pairwise intersections in L.
  static Configuration frankl_wilson(std::uint64_t p, std::vector<std::uint64_t> residues);
  /// ({[k]}, L): k-wise intersections in L.
  static Configuration k_wise(unsigned k, std::uint64_t p, std::vector<std::uint64_t> residues);
  /// (all pairs of [k], L).
  static Configuration complete_graph(unsigned k, std::uint64_t p, std::vector<std::uint64_t> residues);

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Number of sets in C containing a.
std::size_t config_degree(const Configuration& cfg, unsigned a);
/// Largest degree over [0, k).
std::size_t config_max_degree(const Configuration& cfg);

/// h(x) = prod over l in L of (x - l), over GF(p).
struct IntersectionPolynomial {
  FieldDescriptor field;
  std::vector<std::uint64_t> roots;

  std::size_t degree() const noexcept { return roots.size(); }
};
IntersectionPolynomial intersection_polynomial(const Configuration& cfg);
/// x is reduced mod p first.
std::uint64_t eval_h(const IntersectionPolynomial& h, std::uint64_t x);

/// What "k distinct sets" means: distinct list positions, or additionally
/// distinct as sets.
enum class Distinctness { Sets, Positions };

struct ConfigViolation {
  enum class Kind { MemberSizeInL, ForbiddenTuple };
  Kind kind;
  /// The offending member, or the k positions assigned to slots 0..k-1.
  std::vector<std::size_t> positions;
};

/// The first violation of (C, L)-satisfaction, if any. When `must_include`
/// is set only tuples using that position are searched (for incremental
/// growth; member sizes are then checked for that position only).
std::optional<ConfigViolation> config_violation(const SetFamily& family, const Configuration& cfg,
                                                Distinctness distinct = Distinctness::Sets,
                                                std::optional<std::size_t> must_include = std::nullopt);
bool is_config_satisfying(const SetFamily& family, const Configuration& cfg,
                          Distinctness distinct = Distinctness::Sets);

/// Order-k tensor over GF(p) on family^k with entry
/// prod over X in C of h(|intersection of A_{i_x}, x in X|).
Tensor fw_tensor(const SetFamily& family, const Configuration& cfg);

/// Sum over s <= deg(j) |L| of C(n, s): the multilinear-reduction bound on
/// the j-th flattening rank of fw_tensor.
std::uint64_t fw_flattening_bound(const Configuration& cfg, unsigned n, unsigned j);
/// (k - 1) * sum over s <= Delta |L| of C(n, s).
std::uint64_t fw_size_bound(const Configuration& cfg, unsigned n);

// -- bad boxes --------------------------------------------------------------

/// A_1 x ... x A_s with each factor a subset of [0, t) (mask).
struct ProductSet {
  std::vector<std::uint64_t> factors;
  friend bool operator==(const ProductSet&, const ProductSet&) = default;
};

/// The subset of [0, t^s) identified with the product; coordinate tuple
/// (x_1, ..., x_s) maps to x_1 t^(s-1) + ... + x_s.
std::uint64_t flatten_product(const ProductSet& set, unsigned t);

/// All odd-sized subsets of [0, t) in increasing mask order.
std::vector<std::uint64_t> odd_subsets(unsigned t);
/// floor(2^(t+1) / (t - 1)).
std::size_t badbox_k(unsigned t);
/// ceil(2^((t-1)s/4)), computed exactly.
std::size_t badbox_target_size(unsigned t, unsigned s);

struct BadboxFamily {
  unsigned t = 0;
  unsigned s = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::vector<ProductSet> members;

  SetFamily as_set_family() const;
};

class BadboxSamplingError : public std::runtime_error {
 public:
  BadboxSamplingError(const std::string& what, std::size_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

inline constexpr std::size_t kBadboxMaxAttempts = 1000;

/// Draws ceil(2^((t-1)s/4)) product sets uniformly with repetition from the
/// products of odd subsets of [0, t); attempt i uses Rng(seed + i). Returns
/// the first sample in which no k members have pairwise odd intersections.
BadboxFamily sample_badbox_family(unsigned t, unsigned s, std::uint64_t seed,
                                  std::size_t max_attempts = kBadboxMaxAttempts);

/// k members at distinct positions with pairwise odd intersections, if any.
std::optional<std::vector<std::size_t>> find_odd_clique(const std::vector<ProductSet>& members, std::size_t k);
/// True when no k members have pairwise odd intersections.
bool verify_badbox_free(const std::vector<ProductSet>& members, std::size_t k);

}  // namespace flatrank
