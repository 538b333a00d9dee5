#pragma once

// Slow reference implementations used to cross-check the fast code paths.
// Nothing here shares code with canonical.hpp, complex.hpp or linalg.hpp
// beyond the Multigraph container itself.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcx/field.hpp"
#include "gcx/graph.hpp"

namespace gcx::reference {

inline int inversion_sign(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

/// Edge pairs of `g` relabeled by sigma (sigma[old] = new), each normalized
/// to u < v, in the original edge order.
inline std::vector<std::pair<int, int>> image_edges(const Multigraph& g, const std::vector<int>& sigma) {
  std::vector<std::pair<int, int>> out;
  for (auto e : g.edges()) {
    int a = sigma[e.u], b = sigma[e.v];
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

inline std::vector<std::pair<int, int>> sorted_image(const Multigraph& g, const std::vector<int>& sigma) {
  auto img = image_edges(g, sigma);
  std::sort(img.begin(), img.end());
  return img;
}

/// Sign relating the standard orientation of g, pushed along sigma, to the
/// standard orientation of the relabeled graph. Zero for even parity when g
/// has parallel edges (the sorting permutation is then not unique).
inline int pushforward_sign(const Multigraph& g, const std::vector<int>& sigma, Parity p) {
  if (p == Parity::Odd) {
    int s = inversion_sign(sigma);
    for (auto e : g.edges())
      if (sigma[e.u] > sigma[e.v]) s = -s;
    return s;
  }
  auto img = image_edges(g, sigma);
  auto sorted = img;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  // Rank of each image edge in the sorted list.
  std::vector<int> rank(img.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    rank[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), img[i]) - sorted.begin());
  return inversion_sign(rank);
}

struct BruteForceScan {
  std::vector<std::pair<int, int>> minimal_edges;  // lexicographically least relabeling
  std::uint64_t vertex_automorphisms = 0;
  bool zero = false;  // an automorphism (or, for even parity, a parallel pair) reverses orientation
};

/// Scans all V! relabelings.
inline BruteForceScan brute_force_scan(const Multigraph& g, Parity p) {
  const int n = g.num_vertices();
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::pair<int, int>> self;
  for (auto e : g.edges()) self.push_back({e.u, e.v});
  BruteForceScan out;
  out.minimal_edges = self;
  if (p == Parity::Even && !g.is_simple()) out.zero = true;
  do {
    auto img = sorted_image(g, sigma);
    if (img < out.minimal_edges) out.minimal_edges = img;
    if (img == self) {
      ++out.vertex_automorphisms;
      if (p == Parity::Odd && pushforward_sign(g, sigma, p) < 0) out.zero = true;
      if (p == Parity::Even && g.is_simple() && pushforward_sign(g, sigma, p) < 0) out.zero = true;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

inline bool connected(int n, const std::vector<std::pair<int, int>>& edges, int skip_a = -1,
                      int skip_b = -1) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a == skip_a || a == skip_b || b == skip_a || b == skip_b) continue;
    parent[find(a)] = find(b);
  }
  int roots = 0;
  for (int v = 0; v < n; ++v)
    if (v != skip_a && v != skip_b && find(v) == v) ++roots;
  return roots <= 1;
}

inline bool triconnected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 4) return false;
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int a = -1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!connected(n, edges, a, b)) return false;
  return connected(n, edges);
}

/// Number of nonzero isomorphism classes of connected, tadpole-free graphs
/// with V vertices, V + g - 1 edges and all valences >= 3, found by listing
/// every edge multiset on the labeled vertex set.
inline std::size_t naive_basis_size(Parity p, bool triconnected_only, int loops, int vertices) {
  const int n = vertices, m = vertices + loops - 1;
  if (n < 1 || m < 0) return 0;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  if (pairs.empty()) return 0;
  std::set<std::vector<std::pair<int, int>>> classes;
  std::vector<int> pick(m, 0);
  std::vector<int> deg(n);
  // Nondecreasing index sequences enumerate multisets.
  for (;;) {
    std::fill(deg.begin(), deg.end(), 0);
    std::vector<std::pair<int, int>> es;
    for (int i : pick) {
      es.push_back(pairs[i]);
      ++deg[pairs[i].first];
      ++deg[pairs[i].second];
    }
    bool ok = *std::min_element(deg.begin(), deg.end()) >= 3 && connected(n, es);
    if (ok && p == Parity::Even) {
      auto s = es;
      std::sort(s.begin(), s.end());
      ok = std::adjacent_find(s.begin(), s.end()) == s.end();
    }
    if (ok && triconnected_only) ok = triconnected(n, es);
    if (ok) {
      std::vector<Edge> edges;
      for (auto [a, b] : es) edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
      Multigraph g(n, std::move(edges));
      auto scan = brute_force_scan(g, p);
      if (!scan.zero) classes.insert(scan.minimal_edges);
    }
    int i = m - 1;
    while (i >= 0 && pick[i] == static_cast<int>(pairs.size()) - 1) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[i];
  }
  return classes.size();
}

/// Rank over F_p by plain row reduction of a dense copy.
inline std::size_t dense_rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::uint64_t p) {
  const auto P = static_cast<std::int64_t>(p);
  for (auto& row : a)
    for (auto& x : row) x = ((x % P) + P) % P;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const PrimeField f(p);
    const auto inv = static_cast<std::int64_t>(f.inv(static_cast<std::uint64_t>(a[r][c])));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const std::int64_t factor = static_cast<std::int64_t>(
          static_cast<unsigned __int128>(a[i][c]) * static_cast<std::uint64_t>(inv) % p);
      for (std::size_t j = c; j < cols; ++j) {
        const auto sub = static_cast<std::int64_t>(
            static_cast<unsigned __int128>(factor) * static_cast<std::uint64_t>(a[r][j]) % p);
        a[i][j] = (a[i][j] - sub + P) % P;
      }
    }
    ++r;
  }
  return r;
}

/// Rank over Q by fraction-free (Bareiss) elimination in arbitrary precision.
inline std::size_t rational_rank(const std::vector<std::vector<std::int64_t>>& input) {
  using boost::multiprecision::cpp_int;
  const std::size_t rows = input.size(), cols = rows ? input[0].size() : 0;
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = input[i][j];
  cpp_int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Terms of the linear recurrence with monic characteristic polynomial
/// `poly` (low to high, poly.back() == 1) started from `init`.
inline std::vector<std::uint64_t> recurrence_terms(const std::vector<std::uint64_t>& poly,
                                                   const std::vector<std::uint64_t>& init,
                                                   std::size_t count, const PrimeField& f) {
  const std::size_t d = poly.size() - 1;
  std::vector<std::uint64_t> s(init.begin(), init.end());
  while (s.size() < count) {
    const std::size_t t = s.size();
    std::uint64_t next = 0;
    for (std::size_t i = 0; i < d; ++i) next = f.sub(next, f.mul(poly[i], s[t - d + i]));
    s.push_back(next);
  }
  s.resize(count);
  return s;
}

}  // namespace gcx::reference
