#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gcx/canonical.hpp"
#include "gcx/graph.hpp"
#include "gcx/parallel.hpp"
#include "gcx/sparse_matrix.hpp"

namespace gcx {

enum class Variant { Full, Triconnected };

inline std::string_view to_string(Variant v) { return v == Variant::Full ? "full" : "tri"; }

inline Variant parse_variant(std::string_view s) {
  if (s == "full") return Variant::Full;
  if (s == "tri") return Variant::Triconnected;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

struct ComplexSpec {
  Parity parity = Parity::Even;
  Variant variant = Variant::Full;
  int loops = 3;

  friend bool operator==(const ComplexSpec&, const ComplexSpec&) = default;
};

inline std::string to_string(const ComplexSpec& s) {
  return std::string(to_string(s.parity)) + '/' + std::string(to_string(s.variant)) + "/g" +
         std::to_string(s.loops);
}

/// Smallest and largest vertex count a slice of loop order g can have: one
/// vertex would need tadpoles, and 2E >= 3V with E = V + g - 1 caps V.
inline int min_vertices(int /*loops*/) { return 2; }
inline int max_vertices(int loops) { return 2 * (loops - 1); }

/// Degree in GC_n of a generator with `vertices` vertices and loop order g.
inline int cohomological_degree(Parity p, int loops, int vertices) {
  return p == Parity::Even ? vertices - loops - 1 : vertices - 2 * loops - 1;
}

/// Vertex count of the degree-k slice, or nullopt when that slice is empty
/// for valence reasons.
inline std::optional<int> vertex_count(Parity p, int loops, int k) {
  if (loops < 2) throw std::invalid_argument("loop order must be at least 2");
  const int v = p == Parity::Even ? k + loops + 1 : k + 2 * loops + 1;
  if (v < min_vertices(loops) || v > max_vertices(loops)) return std::nullopt;
  return v;
}

/// Generators of one vertex-count slice, sorted in canonical-form order.
class BasisSlice {
 public:
  BasisSlice() = default;
  BasisSlice(ComplexSpec spec, int num_vertices, std::vector<Multigraph> generators)
      : spec_(spec), num_vertices_(num_vertices), generators_(std::move(generators)) {
    index_.reserve(generators_.size());
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i].num_vertices() != num_vertices_)
        throw std::invalid_argument("generator vertex count does not match slice");
      if (!index_.emplace(generators_[i], i).second)
        throw std::invalid_argument("duplicate generator in slice");
    }
  }

  const ComplexSpec& spec() const { return spec_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return num_vertices_ + spec_.loops - 1; }
  int degree() const { return cohomological_degree(spec_.parity, spec_.loops, num_vertices_); }
  const std::vector<Multigraph>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }

  std::optional<std::size_t> index_of(const Multigraph& canonical) const {
    auto it = index_.find(canonical);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const BasisSlice& a, const BasisSlice& b) {
    return a.spec_ == b.spec_ && a.num_vertices_ == b.num_vertices_ &&
           a.generators_ == b.generators_;
  }

 private:
  ComplexSpec spec_;
  int num_vertices_ = 0;
  std::vector<Multigraph> generators_;
  std::unordered_map<Multigraph, std::size_t> index_;
};

namespace detail {

// Sorts the edge list and returns the sign of the sorting permutation.
inline int sort_with_sign(std::vector<Edge>& es) {
  std::vector<int> order(es.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return es[a] < es[b]; });
  std::vector<int> perm(order.size());
  std::vector<Edge> sorted(es.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    perm[order[pos]] = static_cast<int>(pos);
    sorted[pos] = es[order[pos]];
  }
  es = std::move(sorted);
  return permutation_sign(perm);
}

}  // namespace detail

/// Contracts edge `edge_index` of g without canonicalizing. Returns nullopt
/// when a parallel copy of the edge would become a tadpole; otherwise the
/// contracted graph in normal form and the sign of its standard orientation
/// relative to the induced orientation o_e.
///
/// Even: e is moved to the front of the edge order and deleted.
/// Odd: e is read as u -> v with u < v, v is moved to the last vertex
/// position, and v is merged into u.
inline std::optional<std::pair<Multigraph, int>> contract_labeled(const Multigraph& g,
                                                                  int edge_index, Parity p) {
  const auto& es = g.edges();
  if (edge_index < 0 || edge_index >= g.num_edges())
    throw std::out_of_range("edge index out of range");
  const Edge e = es[edge_index];
  for (int k = 0; k < g.num_edges(); ++k)
    if (k != edge_index && es[k] == e) return std::nullopt;

  const int n = g.num_vertices();
  auto image = [&](int x) { return x == e.v ? e.u : (x > e.v ? x - 1 : x); };
  std::vector<Edge> out;
  out.reserve(es.size() - 1);
  int sign = 1;
  if (p == Parity::Even) {
    if (edge_index % 2 == 1) sign = -1;
    for (int k = 0; k < g.num_edges(); ++k) {
      if (k == edge_index) continue;
      int a = image(es[k].u), b = image(es[k].v);
      if (a > b) std::swap(a, b);
      out.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    sign *= detail::sort_with_sign(out);
  } else {
    if ((n - 1 - e.v) % 2 == 1) sign = -1;
    for (int k = 0; k < g.num_edges(); ++k) {
      if (k == edge_index) continue;
      int a = image(es[k].u), b = image(es[k].v);
      if (a > b) {
        std::swap(a, b);
        sign = -sign;
      }
      out.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    std::sort(out.begin(), out.end());
  }
  return std::make_pair(Multigraph(n - 1, std::move(out)), sign);
}

/// Γ/e with its induced orientation, expressed through the canonical form.
inline CanonicalResult contract_edge(const Multigraph& g, int edge_index, Parity p) {
  auto contracted = contract_labeled(g, edge_index, p);
  if (!contracted) return CanonicalResult::zero();
  auto form = canonical_form(contracted->first, p);
  if (form.zero) return CanonicalResult::zero();
  return CanonicalResult(std::move(form.graph), form.sign * contracted->second);
}

/// Subdivides edges i and j (the same edge twice when i == j) and joins the
/// two new vertices. Preserves 3-valence and raises the loop order by one.
inline Multigraph insert_edge_across(const Multigraph& g, int i, int j) {
  const int n = g.num_vertices();
  const auto x = static_cast<Vertex>(n), y = static_cast<Vertex>(n + 1);
  std::vector<Edge> es;
  es.reserve(g.edges().size() + 3);
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge e = g.edges()[k];
    if (k == i && k == j) {
      es.push_back({e.u, x});
      es.push_back({x, y});
      es.push_back({y, e.v});
    } else if (k == i) {
      es.push_back({e.u, x});
      es.push_back({x, e.v});
    } else if (k == j) {
      es.push_back({e.u, y});
      es.push_back({y, e.v});
    } else {
      es.push_back(e);
    }
  }
  es.push_back({x, y});
  return Multigraph(n + 2, std::move(es));
}

/// Subdivides edge i with a new vertex z and hangs a lollipop on it: z - a,
/// a - b, a - c and a doubled edge b = c. Raises the loop order by two.
inline Multigraph attach_lollipop(const Multigraph& g, int i) {
  const int n = g.num_vertices();
  const auto z = static_cast<Vertex>(n), a = static_cast<Vertex>(n + 1),
             b = static_cast<Vertex>(n + 2), c = static_cast<Vertex>(n + 3);
  std::vector<Edge> es;
  es.reserve(g.edges().size() + 6);
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge e = g.edges()[k];
    if (k == i) {
      es.push_back({e.u, z});
      es.push_back({z, e.v});
    } else {
      es.push_back(e);
    }
  }
  for (Edge e : {Edge{z, a}, Edge{a, b}, Edge{a, c}, Edge{b, c}, Edge{b, c}}) es.push_back(e);
  return Multigraph(n + 4, std::move(es));
}

/// All connected tadpole-free cubic multigraphs of loop order g (2g - 2
/// vertices), as canonical representatives in canonical-form order.
///
/// Grown from the theta graph. Deleting a non-bridge edge and smoothing its
/// endpoints reduces any such graph unless that would create a tadpole, which
/// only happens next to a pendant lollipop; removing the lollipop and
/// smoothing its attachment vertex then reduces by two loops. The two inverse
/// moves, edge insertion and lollipop attachment, therefore reach every graph.
inline std::vector<Multigraph> cubic_graphs(int loops) {
  if (loops < 2) throw std::invalid_argument("cubic graphs need loop order >= 2");
  std::vector<std::vector<Multigraph>> by_loops(loops + 1);
  by_loops[2] = {Multigraph::from_pairs(2, {{0, 1}, {0, 1}, {0, 1}})};
  for (int g = 3; g <= loops; ++g) {
    const auto& prev = by_loops[g - 1];
    std::vector<std::vector<Multigraph>> grown(prev.size());
    parallel_for(prev.size(), [&](std::size_t idx) {
      const Multigraph& base = prev[idx];
      for (int i = 0; i < base.num_edges(); ++i)
        for (int j = i; j < base.num_edges(); ++j)
          grown[idx].push_back(
              canonical_form(insert_edge_across(base, i, j), Parity::Odd).graph);
    });
    std::unordered_set<Multigraph> seen;
    for (auto& part : grown)
      for (auto& h : part) seen.insert(std::move(h));
    if (g >= 4)
      for (const auto& base : by_loops[g - 2])
        for (int i = 0; i < base.num_edges(); ++i)
          seen.insert(canonical_form(attach_lollipop(base, i), Parity::Odd).graph);
    by_loops[g].assign(seen.begin(), seen.end());
    std::sort(by_loops[g].begin(), by_loops[g].end());
    if (g >= 4) by_loops[g - 2].clear();
  }
  return std::move(by_loops[loops]);
}

namespace detail {

inline bool admissible(const Multigraph& g, const ComplexSpec& spec) {
  if (spec.variant == Variant::Triconnected) return is_triconnected(g);
  return true;
}

}  // namespace detail

/// Every slice V = 2 .. 2g-2 of the complex (index V - 2). Generators are the
/// nonzero isomorphism classes of connected, at least trivalent, tadpole-free
/// graphs satisfying the variant predicate.
///
/// Lower slices are produced by contracting edges of the slice above: every
/// vertex of valence >= 4 can be split into two vertices of valence >= 3
/// without creating tadpoles, parallel edges (when absent) or disconnection,
/// so each graph is a contraction of one with one more vertex.
inline std::vector<BasisSlice> enumerate_slices(const ComplexSpec& spec) {
  const int g = spec.loops;
  if (g < 2) throw std::invalid_argument("loop order must be at least 2");
  const bool simple_only = spec.parity == Parity::Even;
  const int top = max_vertices(g);

  std::vector<std::vector<Multigraph>> levels(top + 1);
  for (auto& c : cubic_graphs(g))
    if (!simple_only || c.is_simple()) levels[top].push_back(std::move(c));

  for (int v = top; v > min_vertices(g); --v) {
    const auto& current = levels[v];
    std::vector<std::vector<Multigraph>> parts(current.size());
    parallel_for(current.size(), [&](std::size_t idx) {
      const Multigraph& h = current[idx];
      for (int e = 0; e < h.num_edges(); ++e) {
        if (e > 0 && h.edges()[e] == h.edges()[e - 1]) continue;
        auto c = contract_labeled(h, e, spec.parity);
        if (!c || (simple_only && c->first.has_parallel_edges())) continue;
        parts[idx].push_back(canonical_form(c->first, spec.parity).graph);
      }
    });
    std::unordered_set<Multigraph> seen;
    for (auto& part : parts)
      for (auto& h : part) seen.insert(std::move(h));
    levels[v - 1].assign(seen.begin(), seen.end());
    std::sort(levels[v - 1].begin(), levels[v - 1].end());
  }

  std::vector<BasisSlice> slices;
  for (int v = min_vertices(g); v <= top; ++v) {
    std::vector<char> keep(levels[v].size(), 0);
    parallel_for(levels[v].size(), [&](std::size_t idx) {
      const Multigraph& h = levels[v][idx];
      keep[idx] = detail::admissible(h, spec) && !canonical_form(h, spec.parity).zero;
    });
    std::vector<Multigraph> gens;
    for (std::size_t idx = 0; idx < levels[v].size(); ++idx)
      if (keep[idx]) gens.push_back(levels[v][idx]);
    slices.emplace_back(spec, v, std::move(gens));
  }
  return slices;
}

/// Slice with `vertices` vertices; empty when no admissible graph of that
/// size exists.
inline BasisSlice enumerate_basis(const ComplexSpec& spec, int vertices) {
  if (spec.loops < 2) throw std::invalid_argument("loop order must be at least 2");
  if (vertices < 1 || vertices > Multigraph::kMaxVertices)
    throw std::invalid_argument("vertex count " + std::to_string(vertices) + " out of range");
  if (vertices < min_vertices(spec.loops) || vertices > max_vertices(spec.loops))
    return BasisSlice(spec, vertices, {});
  auto slices = enumerate_slices(spec);
  return std::move(slices[vertices - min_vertices(spec.loops)]);
}

/// Edge-contraction differential from `src` (V vertices) to `dst` (V - 1
/// vertices): column j is the expansion of sum_e Γ_j / e in the dst basis.
/// For the triconnected variant, images outside the subspace are dropped.
inline IntSparseMatrix differential_matrix(const BasisSlice& src, const BasisSlice& dst) {
  if (!(src.spec() == dst.spec()) || dst.num_vertices() != src.num_vertices() - 1)
    throw std::invalid_argument("differential needs consecutive slices of the same complex");
  const Parity p = src.spec().parity;
  const bool restrict_images = src.spec().variant == Variant::Triconnected;
  std::vector<std::vector<Triplet>> cols(src.size());
  parallel_for(src.size(), [&](std::size_t j) {
    const Multigraph& h = src.generators()[j];
    for (int e = 0; e < h.num_edges(); ++e) {
      auto r = contract_edge(h, e, p);
      if (r.is_zero()) continue;
      auto row = dst.index_of(r.graph());
      if (!row) {
        if (restrict_images) continue;
        throw std::logic_error("contraction image missing from target basis: " +
                               r.graph().to_string());
      }
      cols[j].push_back({static_cast<std::uint32_t>(*row), static_cast<std::uint32_t>(j),
                         r.sign()});
    }
  });
  std::vector<Triplet> all;
  for (auto& c : cols) all.insert(all.end(), c.begin(), c.end());
  return IntSparseMatrix(dst.size(), src.size(), std::move(all));
}

}  // namespace gcx
