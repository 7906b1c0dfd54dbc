#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flatrank/field.hpp"

namespace flatrank {

/// Dense row-major matrix of canonical field representatives.
class Matrix {
 public:
  Matrix(FieldDescriptor field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldDescriptor& field() const noexcept { return field_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint64_t> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldDescriptor field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

/// GF(2) matrix with rows packed 64 columns per word.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    auto& w = bits_[r * words_ + c / 64];
    w = v ? (w | bit) : (w & ~bit);
  }

  /// Rank by word-level row elimination; destroys the contents.
  std::size_t rank_in_place();
  std::size_t rank() const {
    BitMatrix copy = *this;
    return copy.rank_in_place();
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Rank of a GF(2) matrix whose rows each fit in one word. Destroys rows.
std::size_t rank_gf2_words(std::span<std::uint64_t> rows);

/// Exact rank over the matrix field. GF(2) inputs take the bit-packed path.
std::size_t rank(const Matrix& m);
/// Row reduction without the GF(2) shortcut; used to cross-check the packed
/// kernel.
std::size_t rank_generic(Matrix m);
/// Determinant of a square matrix by Gaussian elimination.
std::uint64_t determinant(Matrix m);

}  // namespace flatrank
