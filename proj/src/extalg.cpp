#include "flatrank/extalg.hpp"

#include <string>

#include "flatrank/combinatorics.hpp"

namespace flatrank {

namespace {

void check_char2(const FieldDescriptor& field) {
  if (field.characteristic() != 2) {
    throw ExtAlgError("exterior algebra needs a field of characteristic 2, got " + field.name());
  }
}

void check_same_space(const ExtVector& u, const ExtVector& v) {
  if (u.n() != v.n()) throw ExtAlgError("ambient dimension mismatch");
  if (!(u.field() == v.field())) throw ExtAlgError("field mismatch");
}

}  // namespace

ExtVector::ExtVector(FieldDescriptor field, unsigned n, unsigned grade) : field_(field), n_(n), grade_(grade) {
  check_char2(field_);
  if (n_ > 63) throw ExtAlgError("ambient dimension must be at most 63");
  if (grade_ > n_) throw ExtAlgError("grade exceeds the ambient dimension");
}

ExtVector ExtVector::from_vector(const Vector& v) {
  ExtVector out(v.field, static_cast<unsigned>(v.dimension()), 1);
  for (std::size_t i = 0; i < v.coords.size(); ++i) out.accumulate(std::uint64_t{1} << i, v.coords[i]);
  return out;
}

ExtVector ExtVector::basis(FieldDescriptor field, unsigned n, std::uint64_t subset) {
  ExtVector out(field, n, static_cast<unsigned>(popcount(subset)));
  out.accumulate(subset, 1);
  return out;
}

void ExtVector::check_subset(std::uint64_t subset) const {
  if ((subset & ~low_bits(n_)) != 0) throw ExtAlgError("subset exceeds ambient dimension");
  if (static_cast<unsigned>(popcount(subset)) != grade_) {
    throw ExtAlgError("subset size " + std::to_string(popcount(subset)) + " does not match grade " +
                      std::to_string(grade_));
  }
}

std::uint64_t ExtVector::coefficient(std::uint64_t subset) const {
  const auto it = coords_.find(subset);
  return it == coords_.end() ? 0 : it->second;
}

std::uint64_t ExtVector::dimension() const { return binomial(n_, grade_); }

void ExtVector::accumulate(std::uint64_t subset, std::uint64_t value) {
  check_subset(subset);
  if (!field_.is_canonical(value)) throw ExtAlgError("coordinate is not a field element");
  if (value == 0) return;
  auto [it, inserted] = coords_.try_emplace(subset, value);
  if (inserted) return;
  it->second = field_.add(it->second, value);
  if (it->second == 0) coords_.erase(it);
}

ExtVector ExtVector::operator+(const ExtVector& o) const {
  check_same_space(*this, o);
  if (grade_ != o.grade_) throw ExtAlgError("sum of elements of different grades");
  ExtVector out = *this;
  for (const auto& [subset, value] : o.coords_) out.accumulate(subset, value);
  return out;
}

ExtVector ExtVector::scaled(std::uint64_t lambda) const {
  ExtVector out(field_, n_, grade_);
  for (const auto& [subset, value] : coords_) out.accumulate(subset, field_.mul(lambda, value));
  return out;
}

ExtVector wedge(const ExtVector& u, const ExtVector& v) {
  check_same_space(u, v);
  const auto& f = u.field();
  ExtVector out(f, u.n(), u.grade() + v.grade());
  for (const auto& [i, a] : u.coords()) {
    for (const auto& [j, b] : v.coords()) {
      if ((i & j) != 0) continue;
      out.accumulate(i | j, f.mul(a, b));
    }
  }
  return out;
}

ExtVector wedge_of_vectors(std::span<const Vector> vectors) {
  if (vectors.empty()) throw ExtAlgError("wedge of an empty list of vectors");
  const std::size_t n = vectors.front().dimension();
  if (vectors.size() > n) throw ExtAlgError("more vectors than the ambient dimension");
  for (const auto& v : vectors) {
    if (v.dimension() != n) throw ExtAlgError("vectors live in different spaces");
    if (!(v.field == vectors.front().field)) throw ExtAlgError("field mismatch");
  }
  ExtVector acc = ExtVector::from_vector(vectors.front());
  for (std::size_t i = 1; i < vectors.size(); ++i) acc = wedge(acc, ExtVector::from_vector(vectors[i]));
  return acc;
}

std::uint64_t top_coefficient(const ExtVector& w) {
  if (w.grade() != w.n()) {
    throw ExtAlgError("top coefficient needs grade " + std::to_string(w.n()) + ", got " + std::to_string(w.grade()));
  }
  return w.coefficient(low_bits(w.n()));
}

std::vector<Vector> moment_curve_vectors(std::size_t count, unsigned n, const FieldDescriptor& field) {
  check_char2(field);
  if (count > field.order() - 1) {
    throw ExtAlgError(field.name() + " has fewer than " + std::to_string(count) + " nonzero elements");
  }
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t t = j + 1;
    Vector v{field, std::vector<std::uint64_t>(n)};
    std::uint64_t power = 1;
    for (unsigned i = 0; i < n; ++i) {
      v.coords[i] = power;
      power = field.mul(power, t);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace flatrank
