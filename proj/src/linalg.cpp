#include "flatrank/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace flatrank {

std::size_t BitMatrix::rank_in_place() {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < rows_ && (bits_[pivot * words_ + w] & bit) == 0) ++pivot;
    if (pivot == rows_) continue;
    auto* prow = bits_.data() + pivot * words_;
    if (pivot != rank) std::swap_ranges(prow, prow + words_, bits_.data() + rank * words_);
    prow = bits_.data() + rank * words_;
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      auto* row = bits_.data() + r * words_;
      if (row[w] & bit) {
        for (std::size_t k = w; k < words_; ++k) row[k] ^= prow[k];
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_gf2_words(std::span<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Take the lowest set bit as pivot; rows already used keep their pivots.
    const std::uint64_t v = rows[i];
    if (v == 0) continue;
    const std::uint64_t low = v & (~v + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & low) rows[j] ^= v;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_generic(Matrix m) {
  const auto& f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = c; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
    }
    const std::uint64_t scale = f.inv(m(rank, c));
    for (std::size_t k = c; k < cols; ++k) m(rank, k) = f.mul(m(rank, k), scale);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t factor = m(r, c);
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(rank, k)));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const Matrix& m) {
  if (!m.field().is_gf2()) return rank_generic(m);
  // Pack along the longer side so that the row count stays small.
  const bool transpose = m.cols() < m.rows();
  const std::size_t rows = transpose ? m.cols() : m.rows();
  const std::size_t cols = transpose ? m.rows() : m.cols();
  if (cols <= 64) {
    std::vector<std::uint64_t> packed(rows, 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m(r, c) == 0) continue;
        if (transpose) {
          packed[c] |= std::uint64_t{1} << r;
        } else {
          packed[r] |= std::uint64_t{1} << c;
        }
      }
    }
    return rank_gf2_words(packed);
  }
  BitMatrix bits(rows, cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (transpose) {
        bits.set(c, r, true);
      } else {
        bits.set(r, c, true);
      }
    }
  }
  return bits.rank_in_place();
}

std::uint64_t determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const auto& f = m.field();
  const std::size_t n = m.rows();
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t k = c; k < n; ++k) std::swap(m(pivot, k), m(c, k));
      det = f.neg(det);
    }
    const std::uint64_t p = m(c, c);
    det = f.mul(det, p);
    const std::uint64_t pinv = f.inv(p);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::uint64_t factor = f.mul(m(r, c), pinv);
      if (factor == 0) continue;
      for (std::size_t k = c; k < n; ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(c, k)));
    }
  }
  return det;
}

}  // namespace flatrank
