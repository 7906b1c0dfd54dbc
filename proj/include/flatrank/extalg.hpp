#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatrank/field.hpp"

namespace flatrank {

class ExtAlgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector of V = F^n.
struct Vector {
  FieldDescriptor field;
  std::vector<std::uint64_t> coords;

  std::size_t dimension() const noexcept { return coords.size(); }
  friend bool operator==(const Vector&, const Vector&) = default;
};

/// Homogeneous element of the exterior power of V = F^n over a field of
/// characteristic 2, stored sparsely: basis element e_I is keyed by the
/// n-bit mask of I and only nonzero coordinates are kept. With char 2 the
/// product is commutative and carries no signs.
class ExtVector {
 public:
  /// Zero element of the given grade.
  ExtVector(FieldDescriptor field, unsigned n, unsigned grade);

  static ExtVector from_vector(const Vector& v);
  /// e_I for the subset mask I.
  static ExtVector basis(FieldDescriptor field, unsigned n, std::uint64_t subset);

  unsigned n() const noexcept { return n_; }
  unsigned grade() const noexcept { return grade_; }
  const FieldDescriptor& field() const noexcept { return field_; }
  /// Nonzero coordinates in ascending mask order.
  const std::map<std::uint64_t, std::uint64_t>& coords() const noexcept { return coords_; }
  std::uint64_t coefficient(std::uint64_t subset) const;
  bool is_zero() const noexcept { return coords_.empty(); }
  /// C(n, grade).
  std::uint64_t dimension() const;

  /// Adds value to the coordinate at subset.
  void accumulate(std::uint64_t subset, std::uint64_t value);

  ExtVector operator+(const ExtVector& o) const;
  ExtVector scaled(std::uint64_t lambda) const;

  friend bool operator==(const ExtVector&, const ExtVector&) = default;

 private:
  void check_subset(std::uint64_t subset) const;

  FieldDescriptor field_;
  unsigned n_;
  unsigned grade_;
  std::map<std::uint64_t, std::uint64_t> coords_;
};

/// Coordinates of u ^ v at K are the sums of u(I) v(J) over disjoint I, J
/// with I | J = K.
ExtVector wedge(const ExtVector& u, const ExtVector& v);

/// v_1 ^ ... ^ v_k by iterated wedge. Coordinate I equals the k x k minor on
/// columns I; the result vanishes iff the vectors are dependent.
ExtVector wedge_of_vectors(std::span<const Vector> vectors);

/// The scalar lambda with w = lambda * e_1 ^ ... ^ e_n; w must have grade n.
std::uint64_t top_coefficient(const ExtVector& w);

/// Points (1, t, t^2, ..., t^(n-1)) on the moment curve, t running over the
/// nonzero field elements in increasing representative order (t = 1, 2, ...,
/// m). Any n of them are linearly independent.
std::vector<Vector> moment_curve_vectors(std::size_t count, unsigned n, const FieldDescriptor& field);

}  // namespace flatrank
