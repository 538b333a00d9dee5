#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace gcx {

struct Triplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::int64_t value = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Integer sparse matrix with deduplicated nonzero entries sorted row-major.
class IntSparseMatrix {
 public:
  IntSparseMatrix() = default;
  IntSparseMatrix(std::size_t nrows, std::size_t ncols) : nrows_(nrows), ncols_(ncols) {}

  /// Sums duplicate coordinates and drops entries that cancel.
  IntSparseMatrix(std::size_t nrows, std::size_t ncols, std::vector<Triplet> entries)
      : nrows_(nrows), ncols_(ncols) {
    for (const auto& t : entries)
      if (t.row >= nrows_ || t.col >= ncols_) throw std::out_of_range("matrix entry out of range");
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    for (const auto& t : entries) {
      if (!entries_.empty() && entries_.back().row == t.row && entries_.back().col == t.col)
        entries_.back().value += t.value;
      else
        entries_.push_back(t);
      if (entries_.back().value == 0) entries_.pop_back();
    }
  }

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }

  IntSparseMatrix transposed() const {
    std::vector<Triplet> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
    return IntSparseMatrix(ncols_, nrows_, std::move(t));
  }

  /// Rows kept in the order given by `rows`.
  IntSparseMatrix select_rows(const std::vector<std::uint32_t>& rows) const {
    std::vector<std::int64_t> where(nrows_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) where[rows[i]] = static_cast<std::int64_t>(i);
    std::vector<Triplet> t;
    for (const auto& e : entries_)
      if (where[e.row] >= 0) t.push_back({static_cast<std::uint32_t>(where[e.row]), e.col, e.value});
    return IntSparseMatrix(rows.size(), ncols_, std::move(t));
  }

  std::vector<std::vector<std::int64_t>> to_dense() const {
    std::vector<std::vector<std::int64_t>> d(nrows_, std::vector<std::int64_t>(ncols_, 0));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
  }

  friend bool operator==(const IntSparseMatrix&, const IntSparseMatrix&) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<Triplet> entries_;
};

/// a * b over the integers.
inline IntSparseMatrix multiply(const IntSparseMatrix& a, const IntSparseMatrix& b) {
  if (a.ncols() != b.nrows()) throw std::invalid_argument("matrix product dimension mismatch");
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> brows(b.nrows());
  for (const auto& e : b.entries()) brows[e.row].push_back({e.col, e.value});
  std::vector<Triplet> out;
  for (const auto& e : a.entries())
    for (auto [c, v] : brows[e.col]) out.push_back({e.row, c, e.value * v});
  return IntSparseMatrix(a.nrows(), b.ncols(), std::move(out));
}

}  // namespace gcx
