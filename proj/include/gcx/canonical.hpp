#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gcx/graph.hpp"

namespace gcx {

/// Orientation sign picked up when the standard orientation of `g` is pushed
/// forward along `relabel` (relabel[old] = new) and compared with the standard
/// orientation of the relabeled normal form.
///
/// Even: sign of the permutation that sorts the relabeled edge list.
/// Odd: sign of the vertex permutation times (-1)^(edges whose direction flips).
/// For even parity the value is meaningless when g has parallel edges.
inline int orientation_sign(const Multigraph& g, const std::vector<int>& relabel, Parity p) {
  const auto& es = g.edges();
  if (p == Parity::Odd) {
    int sign = permutation_sign(relabel);
    for (auto e : es)
      if (relabel[e.u] > relabel[e.v]) sign = -sign;
    return sign;
  }
  std::vector<std::pair<Edge, int>> img;
  img.reserve(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    int a = relabel[es[i].u], b = relabel[es[i].v];
    if (a > b) std::swap(a, b);
    img.push_back({{static_cast<Vertex>(a), static_cast<Vertex>(b)}, static_cast<int>(i)});
  }
  std::stable_sort(img.begin(), img.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<int> perm(img.size());
  for (std::size_t pos = 0; pos < img.size(); ++pos) perm[img[pos].second] = static_cast<int>(pos);
  return permutation_sign(perm);
}

/// Full output of the canonical labeling search.
struct CanonicalForm {
  Multigraph graph;          // canonical representative
  int sign = 1;              // (g, o) = sign * (graph, o_graph)
  bool zero = false;         // some automorphism reverses the orientation
  std::uint64_t vertex_automorphisms = 1;
  std::vector<int> labeling; // labeling[old] = new, realizing `graph`
};

namespace detail {

// Individualization-refinement search. Every leaf of the search tree is a
// labeling; the canonical form is the smallest relabeled edge list over all
// leaves. The leaf set is invariant under automorphisms, so the leaves that
// reach the minimum are exactly best_leaf * Aut(g); comparing their signs
// detects orientation-reversing automorphisms.
class CanonicalSearch {
 public:
  CanonicalSearch(const Multigraph& g, Parity p) : g_(g), parity_(p), n_(g.num_vertices()) {}

  CanonicalForm run() {
    CanonicalForm out;
    if (n_ == 0) {
      out.graph = g_;
      return out;
    }
    std::vector<std::vector<int>> cells(1);
    for (int v = 0; v < n_; ++v) cells[0].push_back(v);
    search(std::move(cells));
    out.graph = Multigraph(n_, best_);
    out.sign = best_sign_;
    out.zero = zero_ || (parity_ == Parity::Even && g_.has_parallel_edges());
    out.vertex_automorphisms = best_count_;
    out.labeling = best_labeling_;
    return out;
  }

 private:
  void refine(std::vector<std::vector<int>>& cells) const {
    std::vector<int> cell_of(n_);
    std::vector<int> counts;
    for (;;) {
      const int k = static_cast<int>(cells.size());
      if (k == n_) return;
      for (int c = 0; c < k; ++c)
        for (int v : cells[c]) cell_of[v] = c;
      counts.assign(static_cast<std::size_t>(n_) * k, 0);
      for (auto e : g_.edges()) {
        ++counts[e.u * k + cell_of[e.v]];
        ++counts[e.v * k + cell_of[e.u]];
      }
      auto row_less = [&](int a, int b) {
        return std::lexicographical_compare(counts.begin() + a * k, counts.begin() + (a + 1) * k,
                                            counts.begin() + b * k, counts.begin() + (b + 1) * k);
      };
      auto row_eq = [&](int a, int b) {
        return std::equal(counts.begin() + a * k, counts.begin() + (a + 1) * k,
                          counts.begin() + b * k);
      };
      std::vector<std::vector<int>> next;
      next.reserve(n_);
      bool split = false;
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::sort(cell.begin(), cell.end(), [&](int a, int b) {
          if (row_less(a, b)) return true;
          if (row_less(b, a)) return false;
          return a < b;
        });
        std::size_t start = 0;
        for (std::size_t i = 1; i <= cell.size(); ++i) {
          if (i == cell.size() || !row_eq(cell[start], cell[i])) {
            next.emplace_back(cell.begin() + start, cell.begin() + i);
            start = i;
          }
        }
        if (next.back().size() != cell.size()) split = true;
      }
      cells = std::move(next);
      if (!split) return;
    }
  }

  void search(std::vector<std::vector<int>> cells) {
    refine(cells);
    if (static_cast<int>(cells.size()) == n_) {
      leaf(cells);
      return;
    }
    std::size_t target = 0;
    while (cells[target].size() == 1) ++target;
    const std::vector<int> members = cells[target];
    for (int v : members) {
      std::vector<std::vector<int>> child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          child.push_back(cells[c]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int w : members)
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      search(std::move(child));
    }
  }

  void leaf(const std::vector<std::vector<int>>& cells) {
    std::vector<int> lab(n_);
    for (int c = 0; c < n_; ++c) lab[cells[c][0]] = c;
    std::vector<Edge> img;
    img.reserve(g_.edges().size());
    for (auto e : g_.edges()) {
      int a = lab[e.u], b = lab[e.v];
      if (a > b) std::swap(a, b);
      img.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    std::sort(img.begin(), img.end());
    if (best_count_ > 0) {
      auto cmp = std::lexicographical_compare_three_way(img.begin(), img.end(), best_.begin(),
                                                        best_.end());
      if (cmp > 0) return;
      if (cmp == 0) {
        ++best_count_;
        if (!zero_ && orientation_sign(g_, lab, parity_) != best_sign_) zero_ = true;
        return;
      }
    }
    best_ = std::move(img);
    best_sign_ = orientation_sign(g_, lab, parity_);
    best_count_ = 1;
    best_labeling_ = std::move(lab);
  }

  const Multigraph& g_;
  Parity parity_;
  int n_;
  std::vector<Edge> best_;
  std::vector<int> best_labeling_;
  int best_sign_ = 1;
  std::uint64_t best_count_ = 0;
  bool zero_ = false;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Multigraph& g, Parity p) {
  return detail::CanonicalSearch(g, p).run();
}

/// Either Zero, or a canonical representative together with the sign relating
/// the input orientation to the canonical one.
class CanonicalResult {
 public:
  static CanonicalResult zero() { return CanonicalResult(); }
  CanonicalResult(Multigraph canonical, int sign) : graph_(std::move(canonical)), sign_(sign) {}

  bool is_zero() const { return sign_ == 0; }
  explicit operator bool() const { return !is_zero(); }
  const Multigraph& graph() const { return graph_; }
  int sign() const { return sign_; }

  friend bool operator==(const CanonicalResult&, const CanonicalResult&) = default;

 private:
  CanonicalResult() = default;
  Multigraph graph_;
  int sign_ = 0;
};

inline CanonicalResult canonicalize(const Multigraph& g, Parity p) {
  auto form = canonical_form(g, p);
  if (form.zero) return CanonicalResult::zero();
  return CanonicalResult(std::move(form.graph), form.sign);
}

/// |Aut(g)| as a multigraph: vertex automorphisms times permutations of
/// parallel edge bundles.
inline std::uint64_t automorphism_group_size(const Multigraph& g) {
  std::uint64_t size = canonical_form(g, Parity::Odd).vertex_automorphisms;
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size();) {
    std::size_t j = i;
    while (j < es.size() && es[j] == es[i]) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) size *= k;
    i = j;
  }
  return size;
}

}  // namespace gcx
