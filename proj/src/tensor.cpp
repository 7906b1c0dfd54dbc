#include "flatrank/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace flatrank {

namespace {

std::size_t checked_volume(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw TensorError("tensor needs at least one axis");
  std::size_t volume = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw TensorError("tensor axis sizes must be positive");
    if (volume > kMaxTensorEntries / d) {
      throw TensorError("tensor exceeds " + std::to_string(kMaxTensorEntries) + " entries");
    }
    volume *= d;
  }
  return volume;
}

// Stride of axis in row-major order.
std::size_t stride_of(const std::vector<std::size_t>& dims, std::size_t axis) {
  std::size_t s = 1;
  for (std::size_t j = axis + 1; j < dims.size(); ++j) s *= dims[j];
  return s;
}

void check_axis(const Tensor& t, std::size_t axis) {
  if (axis >= t.order()) {
    throw TensorError("axis " + std::to_string(axis) + " out of range for order-" + std::to_string(t.order()) +
                      " tensor");
  }
}

void check_compatible(const Tensor& s, const Tensor& t) {
  if (s.dims() != t.dims()) throw TensorError("tensor shape mismatch");
  if (!(s.field() == t.field())) throw TensorError("tensor field mismatch");
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims, FieldDescriptor field)
    : dims_(std::move(dims)), field_(field), entries_(checked_volume(dims_), 0) {}

Tensor::Tensor(std::vector<std::size_t> dims, FieldDescriptor field, std::vector<std::uint64_t> entries)
    : dims_(std::move(dims)), field_(field), entries_(std::move(entries)) {
  if (entries_.size() != checked_volume(dims_)) {
    throw TensorError("expected " + std::to_string(checked_volume(dims_)) + " entries, got " +
                      std::to_string(entries_.size()));
  }
  for (std::uint64_t v : entries_) {
    if (!field_.is_canonical(v)) throw TensorError(std::to_string(v) + " is not an element of " + field_.name());
  }
}

bool Tensor::is_cubical() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [&](std::size_t d) { return d == dims_.front(); });
}

bool Tensor::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint64_t v) { return v == 0; });
}

std::size_t Tensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw TensorError("index has wrong number of coordinates");
  std::size_t off = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (index[j] >= dims_[j]) throw TensorError("index coordinate out of range");
    off = off * dims_[j] + index[j];
  }
  return off;
}

void Tensor::unravel(std::size_t offset, std::span<std::size_t> index) const {
  for (std::size_t j = dims_.size(); j-- > 0;) {
    index[j] = offset % dims_[j];
    offset /= dims_[j];
  }
}

void Tensor::set(std::span<const std::size_t> index, std::uint64_t value) { set_offset(offset(index), value); }

void Tensor::set_offset(std::size_t offset, std::uint64_t value) {
  if (!field_.is_canonical(value)) throw TensorError(std::to_string(value) + " is not an element of " + field_.name());
  entries_.at(offset) = value;
}

bool next_index(std::span<std::size_t> index, std::span<const std::size_t> dims) {
  for (std::size_t j = index.size(); j-- > 0;) {
    if (++index[j] < dims[j]) return true;
    index[j] = 0;
  }
  return false;
}

IndexPattern classify_index(std::span<const std::size_t> index) {
  bool constant = true;
  bool distinct = true;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] != index[0]) constant = false;
    for (std::size_t j = i + 1; j < index.size(); ++j) {
      if (index[i] == index[j]) distinct = false;
    }
  }
  if (constant) return IndexPattern::Constant;
  return distinct ? IndexPattern::AllDistinct : IndexPattern::Mixed;
}

std::size_t flattening_column(const Tensor& t, std::size_t axis, std::span<const std::size_t> index) {
  check_axis(t, axis);
  std::size_t col = 0;
  for (std::size_t j = 0; j < t.order(); ++j) {
    if (j == axis) continue;
    col = col * t.dim(j) + index[j];
  }
  return col;
}

FlatteningMatrix flatten(const Tensor& t, std::size_t axis) {
  check_axis(t, axis);
  const std::size_t rows = t.dim(axis);
  const std::size_t cols = t.size() / rows;
  const std::size_t stride = stride_of(t.dims(), axis);
  Matrix m(t.field(), rows, cols);
  // Removing the axis digit from a row-major offset leaves the column index.
  for (std::size_t off = 0; off < t.size(); ++off) {
    const std::size_t low = off % stride;
    const std::size_t row = (off / stride) % rows;
    const std::size_t high = off / (stride * rows);
    m(row, high * stride + low) = t[off];
  }
  return {axis, std::move(m)};
}

std::size_t flattening_rank(const Tensor& t, std::size_t axis) {
  check_axis(t, axis);
  if (!t.field().is_gf2()) return rank_generic(flatten(t, axis).matrix);
  const std::size_t rows = t.dim(axis);
  const std::size_t cols = t.size() / rows;
  const std::size_t stride = stride_of(t.dims(), axis);
  BitMatrix bits(rows, cols);
  for (std::size_t off = 0; off < t.size(); ++off) {
    if (t[off] == 0) continue;
    const std::size_t low = off % stride;
    const std::size_t row = (off / stride) % rows;
    const std::size_t high = off / (stride * rows);
    bits.set(row, high * stride + low, true);
  }
  return bits.rank_in_place();
}

std::vector<std::size_t> flattening_ranks(const Tensor& t) {
  std::vector<std::size_t> out(t.order());
  for (std::size_t i = 0; i < t.order(); ++i) out[i] = flattening_rank(t, i);
  return out;
}

std::size_t max_flattening_rank(const Tensor& t) {
  const auto r = flattening_ranks(t);
  return *std::max_element(r.begin(), r.end());
}

std::size_t sum_flattening_ranks(const Tensor& t) {
  const auto r = flattening_ranks(t);
  return std::accumulate(r.begin(), r.end(), std::size_t{0});
}

bool is_semi_diagonal(const Tensor& t) {
  if (t.order() < 2) throw TensorError("semi-diagonality needs a tensor of order at least 2");
  if (!t.is_cubical()) throw TensorError("semi-diagonality needs a cubical tensor A^d");
  std::vector<std::size_t> index(t.order(), 0);
  std::size_t off = 0;
  do {
    switch (classify_index(index)) {
      case IndexPattern::Constant:
        if (t[off] == 0) return false;
        break;
      case IndexPattern::AllDistinct:
        if (t[off] != 0) return false;
        break;
      case IndexPattern::Mixed:
        break;
    }
    ++off;
  } while (next_index(index, t.dims()));
  return true;
}

Tensor subtensor(const Tensor& t, const std::vector<std::vector<std::size_t>>& subsets) {
  if (subsets.size() != t.order()) throw TensorError("subtensor needs one index subset per axis");
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    if (subsets[j].empty()) throw TensorError("subtensor index subsets must be nonempty");
    for (std::size_t a : subsets[j]) {
      if (a >= t.dim(j)) throw TensorError("subtensor index out of range");
    }
    dims.push_back(subsets[j].size());
  }
  Tensor out(dims, t.field());
  std::vector<std::size_t> local(dims.size(), 0);
  std::vector<std::size_t> global(dims.size(), 0);
  std::size_t off = 0;
  do {
    for (std::size_t j = 0; j < dims.size(); ++j) global[j] = subsets[j][local[j]];
    out.set_offset(off++, t.at(global));
  } while (next_index(local, dims));
  return out;
}

Tensor add_tensors(const Tensor& s, const Tensor& t) {
  check_compatible(s, t);
  std::vector<std::uint64_t> sum(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) sum[i] = s.field().add(s[i], t[i]);
  return Tensor(s.dims(), s.field(), std::move(sum));
}

Tensor negate(const Tensor& t) {
  std::vector<std::uint64_t> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t.field().neg(t[i]);
  return Tensor(t.dims(), t.field(), std::move(out));
}

Tensor sum_of_outer_products(const std::vector<std::size_t>& dims, const FieldDescriptor& field,
                             const std::vector<std::vector<std::vector<std::uint64_t>>>& terms) {
  Tensor out(dims, field);
  std::vector<std::uint64_t> acc(out.size(), 0);
  for (const auto& factors : terms) {
    if (factors.size() != dims.size()) throw TensorError("outer product needs one factor per axis");
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (factors[j].size() != dims[j]) throw TensorError("outer product factor has wrong length");
    }
    // Row-major partial products: prefix[j] holds the product of factors
    // on axes 0..j-1 for the current index, so zero prefixes skip whole blocks.
    std::vector<std::uint64_t> prefix(dims.size() + 1, 1);
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t j = dims.size() - 1; j > 0; --j) stride[j - 1] = stride[j] * dims[j];
    auto rec = [&](auto&& self, std::size_t j, std::size_t off) -> void {
      if (j == dims.size()) {
        acc[off] = field.add(acc[off], prefix[j]);
        return;
      }
      for (std::size_t x = 0; x < dims[j]; ++x) {
        const std::uint64_t f = factors[j][x];
        if (f == 0) continue;
        prefix[j + 1] = field.mul(prefix[j], f);
        self(self, j + 1, off + x * stride[j]);
      }
    };
    rec(rec, 0, 0);
  }
  return Tensor(dims, field, std::move(acc));
}

std::optional<RankOneSplit> rank_one_split(const Tensor& t, std::size_t axis) {
  const auto flat = flatten(t, axis);
  const auto& m = flat.matrix;
  const auto& f = t.field();
  std::optional<std::size_t> pivot_row;
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < m.rows() && !pivot_row; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        pivot_row = r;
        pivot_col = c;
        break;
      }
    }
  }
  if (!pivot_row) return std::nullopt;
  RankOneSplit split;
  split.column_factor.assign(m.row(*pivot_row).begin(), m.row(*pivot_row).end());
  const std::uint64_t scale = f.inv(m(*pivot_row, pivot_col));
  split.row_factor.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) split.row_factor[r] = f.mul(m(r, pivot_col), scale);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != f.mul(split.row_factor[r], split.column_factor[c])) return std::nullopt;
    }
  }
  return split;
}

Tensor diagonal_tensor(std::size_t side, std::size_t order, const FieldDescriptor& field) {
  Tensor t = Tensor::cube(side, order, field);
  std::vector<std::size_t> index(order);
  for (std::size_t a = 0; a < side; ++a) {
    std::fill(index.begin(), index.end(), a);
    t.set(index, 1);
  }
  return t;
}

Tensor partition_construction(std::size_t side, std::size_t order, const FieldDescriptor& field) {
  if (side < 1) throw TensorError("partition construction needs |A| >= 1");
  if (order < 2) throw TensorError("partition construction needs d >= 2");
  const std::size_t block = order - 1;
  Tensor t = Tensor::cube(side, order, field);
  std::vector<std::size_t> index(order, 0);
  std::size_t off = 0;
  do {
    const std::size_t part = index[0] / block;
    const bool same = std::all_of(index.begin(), index.end(), [&](std::size_t a) { return a / block == part; });
    if (same) t.set_offset(off, 1);
    ++off;
  } while (next_index(index, t.dims()));
  return t;
}

Tensor axis_constant_construction(std::size_t side, std::size_t order, std::size_t axis,
                                  const FieldDescriptor& field) {
  if (side < 1) throw TensorError("axis-constant construction needs |A| >= 1");
  if (order < 2) throw TensorError("axis-constant construction needs d >= 2");
  if (axis >= order) throw TensorError("axis out of range for axis-constant construction");
  Tensor t = Tensor::cube(side, order, field);
  std::vector<std::size_t> index(order, 0);
  std::size_t off = 0;
  do {
    const std::size_t ref = index[axis == 0 ? 1 : 0];
    bool same = true;
    for (std::size_t j = 0; j < order; ++j) {
      if (j != axis && index[j] != ref) same = false;
    }
    if (same) t.set_offset(off, 1);
    ++off;
  } while (next_index(index, t.dims()));
  return t;
}

}  // namespace flatrank
