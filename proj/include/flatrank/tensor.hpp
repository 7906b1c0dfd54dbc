#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatrank/field.hpp"
#include "flatrank/linalg.hpp"

namespace flatrank {

class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense storage refuses anything larger.
inline constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 24;

/// Dense d-dimensional array of field elements in row-major order (last
/// axis varies fastest). Axes are numbered from 0.
class Tensor {
 public:
  /// Zero tensor.
  Tensor(std::vector<std::size_t> dims, FieldDescriptor field);
  /// Validates the entry count and that every entry is canonical.
  Tensor(std::vector<std::size_t> dims, FieldDescriptor field, std::vector<std::uint64_t> entries);

  /// Zero tensor on A^d with |A| = side.
  static Tensor cube(std::size_t side, std::size_t order, FieldDescriptor field) {
    return Tensor(std::vector<std::size_t>(order, side), field);
  }

  std::size_t order() const noexcept { return dims_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t axis) const { return dims_.at(axis); }
  std::size_t size() const noexcept { return entries_.size(); }
  const FieldDescriptor& field() const noexcept { return field_; }
  std::span<const std::uint64_t> entries() const noexcept { return entries_; }
  bool is_cubical() const noexcept;
  bool is_zero() const noexcept;

  std::size_t offset(std::span<const std::size_t> index) const;
  void unravel(std::size_t offset, std::span<std::size_t> index) const;

  std::uint64_t operator[](std::size_t offset) const { return entries_[offset]; }
  std::uint64_t at(std::span<const std::size_t> index) const { return entries_[offset(index)]; }
  std::uint64_t at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  void set(std::span<const std::size_t> index, std::uint64_t value);
  void set(std::initializer_list<std::size_t> index, std::uint64_t value) {
    set(std::span<const std::size_t>(index.begin(), index.size()), value);
  }
  void set_offset(std::size_t offset, std::uint64_t value);

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::size_t> dims_;
  FieldDescriptor field_;
  std::vector<std::uint64_t> entries_;
};

/// Advances a multi-index in row-major order; false after the last one.
bool next_index(std::span<std::size_t> index, std::span<const std::size_t> dims);

enum class IndexPattern { Constant, AllDistinct, Mixed };
/// Constant when all coordinates agree, AllDistinct when pairwise different.
/// A single coordinate counts as Constant.
IndexPattern classify_index(std::span<const std::size_t> index);

/// The matrix with rows indexed by one axis and columns by the remaining
/// axes in their original order, mixed-radix with the last axis least
/// significant.
struct FlatteningMatrix {
  std::size_t axis;
  Matrix matrix;
};

FlatteningMatrix flatten(const Tensor& t, std::size_t axis);
/// Column of the flattening along axis that holds the entry at index.
std::size_t flattening_column(const Tensor& t, std::size_t axis, std::span<const std::size_t> index);

std::size_t flattening_rank(const Tensor& t, std::size_t axis);
std::vector<std::size_t> flattening_ranks(const Tensor& t);
std::size_t max_flattening_rank(const Tensor& t);
std::size_t sum_flattening_ranks(const Tensor& t);

/// Nonzero on every constant index, zero on every all-distinct index.
/// Throws TensorError unless the tensor is cubical of order >= 2.
bool is_semi_diagonal(const Tensor& t);

/// Restriction to the given index subsets, one per axis, in the given order.
Tensor subtensor(const Tensor& t, const std::vector<std::vector<std::size_t>>& subsets);
Tensor add_tensors(const Tensor& s, const Tensor& t);
Tensor negate(const Tensor& t);

/// Sum over terms of the outer products f_1 x ... x f_d; term j supplies one
/// factor vector per axis.
Tensor sum_of_outer_products(const std::vector<std::size_t>& dims, const FieldDescriptor& field,
                             const std::vector<std::vector<std::vector<std::uint64_t>>>& terms);

/// Witness that a flattening has rank one: entry = row_factor[a_axis] *
/// column_factor[column].
struct RankOneSplit {
  std::vector<std::uint64_t> row_factor;
  std::vector<std::uint64_t> column_factor;
};
/// Returns the split when the axis flattening has rank exactly one.
std::optional<RankOneSplit> rank_one_split(const Tensor& t, std::size_t axis);

/// Identity-like tensor: 1 on constant indices, 0 elsewhere.
Tensor diagonal_tensor(std::size_t side, std::size_t order, const FieldDescriptor& field);

/// 1 where all coordinates fall in the same block of the partition of
/// [0, side) into consecutive blocks of size order-1, 0 elsewhere.
/// Semi-diagonal with every flattening rank equal to ceil(side/(order-1)).
Tensor partition_construction(std::size_t side, std::size_t order, const FieldDescriptor& field);

/// 1 where all coordinates other than the one on axis agree, 0 elsewhere.
/// Semi-diagonal with flattening rank 1 along axis.
Tensor axis_constant_construction(std::size_t side, std::size_t order, std::size_t axis,
                                  const FieldDescriptor& field);

}  // namespace flatrank
