#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcx/field.hpp"
#include "gcx/sparse_matrix.hpp"

namespace gcx {

struct FpTriplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::uint64_t value = 0;
};

/// Sparse matrix over F_p with row-indexed and column-indexed copies of the
/// same nonzero entries.
class FpSparseMatrix {
 public:
  /// (column, value) in a row view, (row, value) in a column view.
  using Entry = std::pair<std::uint32_t, std::uint64_t>;

  explicit FpSparseMatrix(PrimeField field = PrimeField()) : field_(field) {}

  /// Values must lie in [0, p). Duplicates are summed; zeros are dropped.
  FpSparseMatrix(PrimeField field, std::size_t nrows, std::size_t ncols,
                 std::vector<FpTriplet> entries)
      : field_(field), nrows_(nrows), ncols_(ncols) {
    for (const auto& t : entries) {
      if (t.row >= nrows || t.col >= ncols) throw std::out_of_range("matrix entry out of range");
      if (t.value >= field.prime()) throw std::invalid_argument("entry not reduced mod p");
    }
    std::sort(entries.begin(), entries.end(), [](const FpTriplet& a, const FpTriplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<FpTriplet> merged;
    merged.reserve(entries.size());
    for (const auto& t : entries) {
      if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
        merged.back().value = field_.add(merged.back().value, t.value);
      else
        merged.push_back(t);
      if (merged.back().value == 0) merged.pop_back();
    }
    row_ptr_.assign(nrows_ + 1, 0);
    col_ptr_.assign(ncols_ + 1, 0);
    for (const auto& t : merged) {
      ++row_ptr_[t.row + 1];
      ++col_ptr_[t.col + 1];
    }
    for (std::size_t i = 0; i < nrows_; ++i) row_ptr_[i + 1] += row_ptr_[i];
    for (std::size_t j = 0; j < ncols_; ++j) col_ptr_[j + 1] += col_ptr_[j];
    row_data_.resize(merged.size());
    col_data_.resize(merged.size());
    std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::size_t k = 0; k < merged.size(); ++k) {
      row_data_[k] = {merged[k].col, merged[k].value};
      col_data_[fill[merged[k].col]++] = {merged[k].row, merged[k].value};
    }
  }

  const PrimeField& field() const { return field_; }
  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t nnz() const { return row_data_.size(); }

  std::span<const Entry> row(std::size_t i) const {
    return {row_data_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const Entry> col(std::size_t j) const {
    return {col_data_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }

  std::vector<FpTriplet> triplets() const {
    std::vector<FpTriplet> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < nrows_; ++i)
      for (auto [c, v] : row(i)) out.push_back({static_cast<std::uint32_t>(i), c, v});
    return out;
  }

  /// y = A x
  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const {
    if (x.size() != ncols_) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint64_t> y(nrows_, 0);
    for (std::size_t i = 0; i < nrows_; ++i) {
      std::uint64_t acc = 0;
      for (auto [c, v] : row(i)) acc = field_.add(acc, field_.mul(v, x[c]));
      y[i] = acc;
    }
    return y;
  }

  /// y = A^T x
  std::vector<std::uint64_t> apply_transposed(const std::vector<std::uint64_t>& x) const {
    if (x.size() != nrows_) throw std::invalid_argument("vector length mismatch");
    std::vector<std::uint64_t> y(ncols_, 0);
    for (std::size_t j = 0; j < ncols_; ++j) {
      std::uint64_t acc = 0;
      for (auto [r, v] : col(j)) acc = field_.add(acc, field_.mul(v, x[r]));
      y[j] = acc;
    }
    return y;
  }

  std::vector<std::vector<std::uint64_t>> to_dense() const {
    std::vector<std::vector<std::uint64_t>> d(nrows_, std::vector<std::uint64_t>(ncols_, 0));
    for (std::size_t i = 0; i < nrows_; ++i)
      for (auto [c, v] : row(i)) d[i][c] = v;
    return d;
  }

 private:
  PrimeField field_;
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_ptr_{0};
  std::vector<Entry> row_data_;
  std::vector<Entry> col_data_;
};

inline FpSparseMatrix reduce_mod_p(const IntSparseMatrix& m, const PrimeField& field) {
  std::vector<FpTriplet> t;
  t.reserve(m.nnz());
  for (const auto& e : m.entries()) {
    std::uint64_t v = field.reduce(e.value);
    if (v != 0) t.push_back({e.row, e.col, v});
  }
  return FpSparseMatrix(field, m.nrows(), m.ncols(), std::move(t));
}

enum class RankMethod { Gauss, Wiedemann };

inline std::string_view to_string(RankMethod m) {
  return m == RankMethod::Gauss ? "gauss" : "wiedemann";
}

inline RankMethod parse_rank_method(std::string_view s) {
  if (s == "gauss") return RankMethod::Gauss;
  if (s == "wiedemann") return RankMethod::Wiedemann;
  throw std::invalid_argument("unknown rank method '" + std::string(s) + "'");
}

struct RankResult {
  std::size_t rank = 0;
  RankMethod method = RankMethod::Gauss;
  bool certified = true;  // exact F_p rank; Wiedemann results are lower bounds
  std::uint64_t prime = PrimeField::kDefaultPrime;
  std::uint64_t seed = 0;

  std::string to_string() const {
    return "rank=" + std::to_string(rank) + " method=" + std::string(gcx::to_string(method)) +
           " prime=" + std::to_string(prime) + " seed=" + std::to_string(seed) +
           " certified=" + (certified ? "true" : "false");
  }

  friend bool operator==(const RankResult&, const RankResult&) = default;
};

/// Pivot selection for gauss_rank. The rank never depends on it.
struct PivotStrategy {
  enum class Kind { Markowitz, TwoPhase };
  Kind kind = Kind::Markowitz;
  std::vector<std::uint32_t> preferred_rows;
  std::vector<std::uint32_t> preferred_cols;

  static PivotStrategy markowitz() { return {}; }
  /// Eliminate `rows` first, then `cols`, then fall back to Markowitz.
  static PivotStrategy two_phase(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols) {
    return {Kind::TwoPhase, std::move(rows), std::move(cols)};
  }
};

namespace detail {

// Row echelon rank of a dense matrix, destroying it.
inline std::size_t dense_rank_inplace(std::vector<std::vector<std::uint64_t>>& a,
                                      const PrimeField& f) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = f.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t factor = f.mul(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k)
        if (a[rank][k]) a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

// Sparse elimination on a private copy of the rows. Column counts are exact;
// the column-to-row lists are supersets that are filtered on use.
class SparseEliminator {
 public:
  using Entry = FpSparseMatrix::Entry;
  static constexpr double kDenseSwitch = 0.20;

  explicit SparseEliminator(const FpSparseMatrix& m)
      : f_(m.field()),
        rows_(m.nrows()),
        active_(m.nrows(), 1),
        col_count_(m.ncols(), 0),
        col_rows_(m.ncols()),
        stamp_(m.nrows(), 0) {
    for (std::size_t i = 0; i < m.nrows(); ++i) {
      auto r = m.row(i);
      rows_[i].assign(r.begin(), r.end());
      nnz_ += rows_[i].size();
      if (rows_[i].empty()) active_[i] = 0;
      else ++live_rows_;
      for (auto [c, v] : r) {
        if (col_count_[c]++ == 0) ++live_cols_;
        col_rows_[c].push_back(static_cast<std::uint32_t>(i));
      }
    }
    for (std::uint32_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c]) heap_.push({col_count_[c], c});
  }

  std::size_t run(const PivotStrategy& s) {
    if (s.kind == PivotStrategy::Kind::TwoPhase) {
      for (auto r : s.preferred_rows)
        if (r >= rows_.size()) throw std::out_of_range("preferred row out of range");
      for (auto c : s.preferred_cols)
        if (c >= col_count_.size()) throw std::out_of_range("preferred column out of range");
      for (;;) {
        std::int64_t best = -1;
        for (auto r : s.preferred_rows)
          if (active_[r] && (best < 0 || rows_[r].size() < rows_[best].size())) best = r;
        if (best < 0) break;
        std::uint32_t col = rows_[best].front().first;
        for (auto [c, v] : rows_[best])
          if (col_count_[c] < col_count_[col]) col = c;
        pivot(static_cast<std::uint32_t>(best), col);
      }
      for (;;) {
        std::int64_t best = -1;
        for (auto c : s.preferred_cols)
          if (col_count_[c] && (best < 0 || col_count_[c] < col_count_[best])) best = c;
        if (best < 0) break;
        pivot(shortest_row(static_cast<std::uint32_t>(best)), static_cast<std::uint32_t>(best));
      }
    }
    while (live_rows_ > 0) {
      const double area = static_cast<double>(live_rows_) * static_cast<double>(live_cols_);
      if (static_cast<double>(nnz_) > kDenseSwitch * area && area <= 5e7) return rank_ + finish_dense();
      std::uint32_t col = next_markowitz_column();
      pivot(shortest_row(col), col);
    }
    return rank_;
  }

 private:
  bool contains(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), Entry{c, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return it != row.end() && it->first == c;
  }

  std::uint32_t shortest_row(std::uint32_t c) const {
    std::int64_t best = -1;
    for (auto r : col_rows_[c])
      if (active_[r] && contains(r, c) &&
          (best < 0 || rows_[r].size() < rows_[best].size() ||
           (rows_[r].size() == rows_[best].size() && r < best)))
        best = r;
    if (best < 0) throw std::logic_error("column count out of sync");
    return static_cast<std::uint32_t>(best);
  }

  std::uint32_t next_markowitz_column() {
    while (!heap_.empty()) {
      auto [count, c] = heap_.top();
      if (count == col_count_[c] && count > 0) return c;
      heap_.pop();
    }
    throw std::logic_error("no pivot column left");
  }

  void bump(std::uint32_t c, int delta) {
    const std::uint32_t before = col_count_[c];
    col_count_[c] = static_cast<std::uint32_t>(static_cast<std::int64_t>(before) + delta);
    if (before == 0 && col_count_[c] > 0) ++live_cols_;
    if (before > 0 && col_count_[c] == 0) --live_cols_;
    if (col_count_[c]) heap_.push({col_count_[c], c});
  }

  void deactivate(std::uint32_t r) {
    active_[r] = 0;
    --live_rows_;
    nnz_ -= rows_[r].size();
    for (auto [c, v] : rows_[r]) bump(c, -1);
    rows_[r].clear();
    rows_[r].shrink_to_fit();
  }

  void pivot(std::uint32_t r, std::uint32_t c) {
    const auto& prow = rows_[r];
    std::uint64_t a = 0;
    for (auto [cc, v] : prow)
      if (cc == c) a = v;
    const std::uint64_t inv = f_.inv(a);
    ++epoch_;
    stamp_[r] = epoch_;
    const std::vector<std::uint32_t> targets = col_rows_[c];
    for (auto s : targets) {
      if (stamp_[s] == epoch_ || !active_[s]) continue;
      stamp_[s] = epoch_;
      if (!contains(s, c)) continue;
      eliminate(s, r, c, inv);
    }
    col_rows_[c].clear();
    deactivate(r);
    ++rank_;
  }

  // rows_[s] -= (rows_[s][c] / rows_[r][c]) * rows_[r]
  void eliminate(std::uint32_t s, std::uint32_t r, std::uint32_t c, std::uint64_t inv_pivot) {
    const auto& pr = rows_[r];
    auto& sr = rows_[s];
    std::uint64_t b = 0;
    for (auto [cc, v] : sr)
      if (cc == c) b = v;
    const std::uint64_t factor = f_.mul(b, inv_pivot);
    std::vector<Entry> out;
    out.reserve(sr.size() + pr.size());
    std::size_t i = 0, j = 0;
    while (i < sr.size() || j < pr.size()) {
      if (j == pr.size() || (i < sr.size() && sr[i].first < pr[j].first)) {
        out.push_back(sr[i++]);
      } else if (i == sr.size() || pr[j].first < sr[i].first) {
        out.push_back({pr[j].first, f_.neg(f_.mul(factor, pr[j].second))});
        bump(pr[j].first, +1);
        col_rows_[pr[j].first].push_back(s);
        ++j;
      } else {
        std::uint64_t v = f_.sub(sr[i].second, f_.mul(factor, pr[j].second));
        if (v) out.push_back({sr[i].first, v});
        else bump(sr[i].first, -1);
        ++i;
        ++j;
      }
    }
    nnz_ = nnz_ - sr.size() + out.size();
    sr = std::move(out);
    if (sr.empty()) {
      active_[s] = 0;
      --live_rows_;
    }
  }

  std::size_t finish_dense() {
    std::vector<std::int64_t> col_index(col_count_.size(), -1);
    std::size_t ncols = 0;
    for (std::size_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c]) col_index[c] = static_cast<std::int64_t>(ncols++);
    std::vector<std::vector<std::uint64_t>> dense;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      std::vector<std::uint64_t> row(ncols, 0);
      for (auto [c, v] : rows_[r]) row[col_index[c]] = v;
      dense.push_back(std::move(row));
    }
    return dense_rank_inplace(dense, f_);
  }

  using HeapItem = std::pair<std::uint32_t, std::uint32_t>;  // (count, column)

  PrimeField f_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<char> active_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
  std::size_t nnz_ = 0;
  std::size_t live_rows_ = 0;
  std::size_t live_cols_ = 0;
  std::size_t rank_ = 0;
};

}  // namespace detail

/// Exact rank over F_p by sparse Gaussian elimination.
inline RankResult gauss_rank(const FpSparseMatrix& m,
                             const PivotStrategy& strategy = PivotStrategy::markowitz()) {
  RankResult out;
  out.method = RankMethod::Gauss;
  out.certified = true;
  out.prime = m.field().prime();
  out.rank = detail::SparseEliminator(m).run(strategy);
  return out;
}

/// The implicit operator B = D1 A^T D2 A D1 on F_p^ncols.
class PreconditionedOperator {
 public:
  PreconditionedOperator(const FpSparseMatrix& a, std::vector<std::uint64_t> d1,
                         std::vector<std::uint64_t> d2)
      : a_(&a), d1_(std::move(d1)), d2_(std::move(d2)) {
    if (d1_.size() != a.ncols() || d2_.size() != a.nrows())
      throw std::invalid_argument("diagonal preconditioner has the wrong size");
    for (auto x : d1_)
      if (x == 0 || x >= a.field().prime()) throw std::invalid_argument("diagonal entry not a unit");
    for (auto x : d2_)
      if (x == 0 || x >= a.field().prime()) throw std::invalid_argument("diagonal entry not a unit");
  }

  std::size_t dimension() const { return a_->ncols(); }
  const std::vector<std::uint64_t>& d1() const { return d1_; }
  const std::vector<std::uint64_t>& d2() const { return d2_; }

  std::vector<std::uint64_t> apply(std::vector<std::uint64_t> x) const {
    const auto& f = a_->field();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.mul(x[i], d1_[i]);
    auto y = a_->apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = f.mul(y[i], d2_[i]);
    auto z = a_->apply_transposed(y);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = f.mul(z[i], d1_[i]);
    return z;
  }

 private:
  const FpSparseMatrix* a_;
  std::vector<std::uint64_t> d1_, d2_;
};

namespace detail {

inline std::uint64_t random_unit(std::mt19937_64& rng, std::uint64_t p) { return rng() % (p - 1) + 1; }
inline std::uint64_t random_element(std::mt19937_64& rng, std::uint64_t p) { return rng() % p; }

inline std::uint64_t dot(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                         const PrimeField& f) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace detail

/// Random unit diagonals drawn from `seed` (mt19937_64, so identical on every platform).
inline PreconditionedOperator precondition(const FpSparseMatrix& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t p = m.field().prime();
  std::vector<std::uint64_t> d1(m.ncols()), d2(m.nrows());
  for (auto& x : d1) x = detail::random_unit(rng, p);
  for (auto& x : d2) x = detail::random_unit(rng, p);
  return PreconditionedOperator(m, std::move(d1), std::move(d2));
}

/// Incremental Berlekamp-Massey over F_p.
class BerlekampMassey {
 public:
  explicit BerlekampMassey(PrimeField field) : f_(field) {}

  /// Feeds the next term; returns true when it was already predicted.
  bool push(std::uint64_t s) {
    seq_.push_back(s);
    const std::size_t n = seq_.size() - 1;
    std::uint64_t d = s;
    for (std::size_t i = 1; i <= length_ && i < c_.size(); ++i)
      d = f_.add(d, f_.mul(c_[i], seq_[n - i]));
    if (d == 0) {
      ++shift_;
      return true;
    }
    const std::uint64_t coef = f_.mul(d, f_.inv(b_));
    std::vector<std::uint64_t> t = c_;
    if (c_.size() < b_poly_.size() + shift_) c_.resize(b_poly_.size() + shift_, 0);
    for (std::size_t i = 0; i < b_poly_.size(); ++i)
      c_[i + shift_] = f_.sub(c_[i + shift_], f_.mul(coef, b_poly_[i]));
    if (2 * length_ <= n) {
      length_ = n + 1 - length_;
      b_poly_ = std::move(t);
      b_ = d;
      shift_ = 1;
    } else {
      ++shift_;
    }
    return false;
  }

  std::size_t length() const { return length_; }
  std::size_t terms() const { return seq_.size(); }

  /// Monic generating polynomial, coefficients from x^0 up to x^L.
  std::vector<std::uint64_t> polynomial() const {
    std::vector<std::uint64_t> out(length_ + 1, 0);
    for (std::size_t i = 0; i <= length_; ++i) out[length_ - i] = i < c_.size() ? c_[i] : 0;
    return out;
  }

 private:
  PrimeField f_;
  std::vector<std::uint64_t> seq_;
  std::vector<std::uint64_t> c_{1};
  std::vector<std::uint64_t> b_poly_{1};
  std::size_t length_ = 0;
  std::size_t shift_ = 1;
  std::uint64_t b_ = 1;
};

/// Shortest linear recurrence of `seq` as a monic polynomial (low to high).
inline std::vector<std::uint64_t> berlekamp_massey(const std::vector<std::uint64_t>& seq,
                                                   const PrimeField& field) {
  BerlekampMassey bm(field);
  for (auto s : seq) bm.push(field.reduce(static_cast<std::int64_t>(s % field.prime())));
  return bm.polynomial();
}

struct WiedemannOptions {
  std::size_t blocking = 1;
  std::uint64_t seed = 0;
  int trials = 3;
  std::size_t stable_terms = 8;
};

namespace detail {

inline std::size_t scalar_wiedemann_trial(const FpSparseMatrix& m, std::uint64_t seed,
                                          std::size_t stable_terms) {
  const PrimeField& f = m.field();
  const auto op = precondition(m, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::uint64_t> v(m.ncols());
  for (auto& x : v) x = random_element(rng, f.prime());

  const std::size_t max_terms = 2 * std::min(m.nrows(), m.ncols()) + 16;
  BerlekampMassey bm(f);
  std::size_t quiet = 0;
  auto feed = [&](std::uint64_t s) {
    quiet = bm.push(s) ? quiet + 1 : 0;
    return bm.terms() >= max_terms ||
           (quiet >= stable_terms && bm.terms() >= 2 * bm.length() + stable_terms);
  };
  // u^T B^(2k) u = v_k . v_k and u^T B^(2k+1) u = v_k . v_(k+1) since B is symmetric.
  if (!feed(dot(v, v, f))) {
    for (;;) {
      auto w = op.apply(v);
      if (feed(dot(v, w, f))) break;
      if (feed(dot(w, w, f))) break;
      v = std::move(w);
    }
  }
  const auto poly = bm.polynomial();
  const std::size_t deg = poly.size() - 1;
  return deg > 0 && poly[0] == 0 ? deg - 1 : deg;
}

// Block version: rank of the block Hankel matrix H_(ij) = U^T B^(i+j+1) U.
// H = K^T B K for the block Krylov matrix K, so its rank never exceeds rank(B).
inline std::size_t block_wiedemann_trial(const FpSparseMatrix& m, std::uint64_t seed,
                                         std::size_t n_block) {
  const PrimeField& f = m.field();
  const auto op = precondition(m, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  const std::size_t n = m.ncols();
  const std::size_t blocks = std::min(m.nrows(), m.ncols()) / n_block + 2;

  std::vector<std::vector<std::vector<std::uint64_t>>> krylov(blocks + 1);
  krylov[0].resize(n_block, std::vector<std::uint64_t>(n));
  for (auto& u : krylov[0])
    for (auto& x : u) x = random_element(rng, f.prime());
  for (std::size_t j = 1; j <= blocks; ++j)
    for (const auto& u : krylov[j - 1]) krylov[j].push_back(op.apply(u));

  // S_k = (B^a U)^T (B^b U) for any a + b = k.
  std::vector<std::vector<std::uint64_t>> seq(2 * blocks, std::vector<std::uint64_t>(n_block * n_block));
  for (std::size_t k = 1; k < 2 * blocks; ++k) {
    const std::size_t a = k / 2, b = k - a;
    for (std::size_t x = 0; x < n_block; ++x)
      for (std::size_t y = 0; y < n_block; ++y)
        seq[k][x * n_block + y] = dot(krylov[a][x], krylov[b][y], f);
  }
  const std::size_t dim = blocks * n_block;
  std::vector<std::vector<std::uint64_t>> h(dim, std::vector<std::uint64_t>(dim));
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t j = 0; j < blocks; ++j)
      for (std::size_t x = 0; x < n_block; ++x)
        for (std::size_t y = 0; y < n_block; ++y)
          h[i * n_block + x][j * n_block + y] = seq[i + j + 1][x * n_block + y];
  return dense_rank_inplace(h, f);
}

}  // namespace detail

/// Randomized rank lower bound. Runs `trials` independent seeds derived from
/// options.seed and reports the largest estimate; never certified.
inline RankResult wiedemann_rank(const FpSparseMatrix& m, const WiedemannOptions& options = {}) {
  if (options.blocking < 1) throw std::invalid_argument("blocking factor must be at least 1");
  if (options.trials < 1) throw std::invalid_argument("need at least one trial");
  RankResult out;
  out.method = RankMethod::Wiedemann;
  out.certified = false;
  out.prime = m.field().prime();
  out.seed = options.seed;
  if (m.nnz() == 0) return out;
  std::mt19937_64 master(options.seed);
  for (int t = 0; t < options.trials; ++t) {
    const std::uint64_t s = master();
    const std::size_t est = options.blocking == 1
                                ? detail::scalar_wiedemann_trial(m, s, options.stable_terms)
                                : detail::block_wiedemann_trial(m, s, options.blocking);
    out.rank = std::max(out.rank, est);
  }
  return out;
}

/// Dispatches on the method; Gauss ignores the seed.
inline RankResult compute_rank(const FpSparseMatrix& m, RankMethod method, std::uint64_t seed = 0,
                               const PivotStrategy& strategy = PivotStrategy::markowitz()) {
  if (method == RankMethod::Gauss) return gauss_rank(m, strategy);
  WiedemannOptions opt;
  opt.seed = seed;
  return wiedemann_rank(m, opt);
}

}  // namespace gcx
