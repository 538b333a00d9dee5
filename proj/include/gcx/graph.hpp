#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcx {

/// Parity of the graph complex degree n. Even: the orientation datum is an
/// ordering of the edges. Odd: an ordering of the vertices together with a
/// direction on every edge.
enum class Parity { Even, Odd };

inline int complex_degree(Parity p) { return p == Parity::Even ? 2 : 3; }

inline std::string_view to_string(Parity p) {
  return p == Parity::Even ? "even" : "odd";
}

inline Parity parse_parity(std::string_view s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw std::invalid_argument("unknown parity '" + std::string(s) + "'");
}

using Vertex = std::uint8_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Loop-free multigraph in storage normal form: every edge has u < v and the
/// edge list is sorted lexicographically. Parallel edges are repeated entries.
class Multigraph {
 public:
  static constexpr int kMaxVertices = 64;

  Multigraph() = default;

  Multigraph(int num_vertices, std::vector<Edge> edges)
      : n_(num_vertices), edges_(std::move(edges)) {
    if (n_ < 0 || n_ > kMaxVertices)
      throw std::invalid_argument("vertex count out of range");
    for (auto& e : edges_) {
      if (e.u == e.v) throw std::invalid_argument("self-edge at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
  }

  static Multigraph from_pairs(int num_vertices, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Edge> es;
    es.reserve(pairs.size());
    for (auto [a, b] : pairs) es.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    return Multigraph(num_vertices, std::move(es));
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// First Betti number for a connected graph.
  int loop_order() const { return num_edges() - n_ + 1; }

  std::vector<int> degrees() const {
    std::vector<int> d(n_, 0);
    for (auto e : edges_) {
      ++d[e.u];
      ++d[e.v];
    }
    return d;
  }

  int min_degree() const {
    if (n_ == 0) return 0;
    auto d = degrees();
    return *std::min_element(d.begin(), d.end());
  }

  bool has_parallel_edges() const {
    return std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end();
  }

  bool is_simple() const { return !has_parallel_edges(); }

  /// Row-major n x n table of edge multiplicities.
  std::vector<std::uint8_t> multiplicity_matrix() const {
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n_) * n_, 0);
    for (auto e : edges_) {
      ++m[e.u * n_ + e.v];
      ++m[e.v * n_ + e.u];
    }
    return m;
  }

  /// Applies a vertex relabeling (relabel[old] = new) and returns the normal form.
  Multigraph relabeled(const std::vector<int>& relabel) const {
    std::vector<Edge> es;
    es.reserve(edges_.size());
    for (auto e : edges_)
      es.push_back({static_cast<Vertex>(relabel[e.u]), static_cast<Vertex>(relabel[e.v])});
    return Multigraph(n_, std::move(es));
  }

  /// Canonical-form order: vertex count, then edge count, then edge lists.
  friend std::strong_ordering operator<=>(const Multigraph& a, const Multigraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.edges_.begin(), a.edges_.end(),
                                                  b.edges_.begin(), b.edges_.end());
  }
  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

  /// `V E u1 v1 ... uE vE`
  std::string to_string() const {
    std::string s = std::to_string(n_) + ' ' + std::to_string(edges_.size());
    for (auto e : edges_) {
      s += ' ';
      s += std::to_string(e.u);
      s += ' ';
      s += std::to_string(e.v);
    }
    return s;
  }

  static Multigraph parse(std::string_view line) {
    std::istringstream in{std::string(line)};
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("malformed graph line");
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
      long long a = -1, b = -1;
      if (!(in >> a >> b) || a < 0 || b < 0 || a >= n || b >= n)
        throw std::invalid_argument("malformed graph line");
      es.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing data in graph line");
    return Multigraph(static_cast<int>(n), std::move(es));
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_);
    for (auto e : edges_) {
      h = (h ^ e.u) * 1099511628211ull;
      h = (h ^ e.v) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct MultigraphHash {
  std::size_t operator()(const Multigraph& g) const { return g.hash(); }
};

namespace detail {

inline std::vector<std::vector<int>> adjacency_lists(const Multigraph& g) {
  std::vector<std::vector<int>> adj(g.num_vertices());
  for (auto e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Connectivity of the subgraph induced on vertices with removed[v] == false.
inline bool connected_without(const std::vector<std::vector<int>>& adj,
                              const std::vector<char>& removed) {
  const int n = static_cast<int>(adj.size());
  int start = -1, alive = 0;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) {
      ++alive;
      if (start < 0) start = v;
    }
  if (alive <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == alive;
}

}  // namespace detail

inline bool is_connected(const Multigraph& g) {
  return detail::connected_without(detail::adjacency_lists(g),
                                   std::vector<char>(g.num_vertices(), 0));
}

/// Simple, at least 4 vertices, and connected after deleting any two vertices.
inline bool is_triconnected(const Multigraph& g) {
  const int n = g.num_vertices();
  if (n < 4 || !g.is_simple()) return false;
  auto adj = detail::adjacency_lists(g);
  std::vector<char> removed(n, 0);
  if (!detail::connected_without(adj, removed)) return false;
  for (int a = 0; a < n; ++a) {
    removed[a] = 1;
    for (int b = a + 1; b < n; ++b) {
      removed[b] = 1;
      bool ok = detail::connected_without(adj, removed);
      removed[b] = 0;
      if (!ok) return false;
    }
    removed[a] = 0;
  }
  return true;
}

/// Sign of a permutation given as a vector of images.
inline int permutation_sign(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace gcx

template <>
struct std::hash<gcx::Multigraph> {
  std::size_t operator()(const gcx::Multigraph& g) const { return g.hash(); }
};
