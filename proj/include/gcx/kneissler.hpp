#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "gcx/canonical.hpp"
#include "gcx/complex.hpp"
#include "gcx/graph.hpp"
#include "gcx/linalg.hpp"
#include "gcx/parallel.hpp"

namespace gcx {

enum class FamilyKind { B, X, Y, A, APrime };

inline std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::B: return "B";
    case FamilyKind::X: return "X";
    case FamilyKind::Y: return "Y";
    case FamilyKind::A: return "A";
    case FamilyKind::APrime: return "A'";
  }
  return "?";
}

/// Thrown when a differential image is not a member of B_g or its complement.
class ImageOutsideSpan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void add_cycle(std::vector<Edge>& es, const std::vector<int>& vs) {
  if (vs.size() < 2) throw std::invalid_argument("rim needs at least two vertices");
  for (std::size_t i = 0; i < vs.size(); ++i)
    es.push_back({static_cast<Vertex>(vs[i]), static_cast<Vertex>(vs[(i + 1) % vs.size()])});
}

inline void check_permutation(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int x : perm) {
    if (x < 0 || x >= static_cast<int>(perm.size()) || seen[x])
      throw std::invalid_argument("not a permutation of 0..N-1");
    seen[x] = 1;
  }
}

inline std::vector<int> iota_vec(int from, int count) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace detail

/// Upper rim 0..N-1, lower rim N..2N-1, rung i -- N + perm[i]. Loop order N + 1.
inline Multigraph barrel(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("barrel needs N >= 2");
  detail::check_permutation(perm);
  std::vector<Edge> es;
  detail::add_cycle(es, detail::iota_vec(0, n));
  detail::add_cycle(es, detail::iota_vec(n, n));
  for (int i = 0; i < n; ++i) es.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + perm[i])});
  return Multigraph(2 * n, std::move(es));
}

/// Upper rim u_0..u_{N-1}, lower rim w_0..w_N; u_0 -- w_0 plus rungs
/// u_i -- w_{1+perm[i]}. u_0 is the 4-valent vertex. Loop order N + 2.
inline Multigraph x_graph(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("X graph needs N >= 2");
  detail::check_permutation(perm);
  auto w = [n](int i) { return static_cast<Vertex>(n + i); };
  std::vector<Edge> es;
  detail::add_cycle(es, detail::iota_vec(0, n));
  detail::add_cycle(es, detail::iota_vec(n, n + 1));
  es.push_back({0, w(0)});
  for (int i = 0; i < n; ++i) es.push_back({static_cast<Vertex>(i), w(1 + perm[i])});
  return Multigraph(2 * n + 1, std::move(es));
}

/// Upper rim v_0..v_{N-1}, lower rim w_0..w_{N-1}, pendant l -- w_0. Slot 0
/// is l and slot j > 0 is w_j; v_i is joined to slot perm[i], doubly when the
/// slot is l, which makes that v_i 4-valent. Loop order N + 2.
inline Multigraph y_graph(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("Y graph needs N >= 2");
  detail::check_permutation(perm);
  const auto l = static_cast<Vertex>(2 * n);
  std::vector<Edge> es;
  detail::add_cycle(es, detail::iota_vec(0, n));
  detail::add_cycle(es, detail::iota_vec(n, n));
  es.push_back({static_cast<Vertex>(n), l});
  for (int i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (perm[i] == 0) {
      es.push_back({v, l});
      es.push_back({v, l});
    } else {
      es.push_back({v, static_cast<Vertex>(n + perm[i])});
    }
  }
  return Multigraph(2 * n + 1, std::move(es));
}

/// X_perm with its 4-valent vertex split so that the upper rim stays intact:
/// u_0 -- h, h -- w_0, h -- w_{1+perm[0]}. Loop order N + 2, trivalent.
inline Multigraph a_graph(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("A graph needs N >= 2");
  detail::check_permutation(perm);
  auto w = [n](int i) { return static_cast<Vertex>(n + i); };
  const auto h = static_cast<Vertex>(2 * n + 1);
  std::vector<Edge> es;
  detail::add_cycle(es, detail::iota_vec(0, n));
  detail::add_cycle(es, detail::iota_vec(n, n + 1));
  es.push_back({0, h});
  es.push_back({h, w(0)});
  es.push_back({h, w(1 + perm[0])});
  for (int i = 1; i < n; ++i) es.push_back({static_cast<Vertex>(i), w(1 + perm[i])});
  return Multigraph(2 * n + 2, std::move(es));
}

/// Y_perm with its 4-valent vertex split so that the upper rim stays intact:
/// the doubled rung becomes v -- h plus a double edge h = l. Loop order N + 2.
inline Multigraph a_prime_graph(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) throw std::invalid_argument("A' graph needs N >= 2");
  detail::check_permutation(perm);
  const auto l = static_cast<Vertex>(2 * n);
  const auto h = static_cast<Vertex>(2 * n + 1);
  std::vector<Edge> es;
  detail::add_cycle(es, detail::iota_vec(0, n));
  detail::add_cycle(es, detail::iota_vec(n, n));
  es.push_back({static_cast<Vertex>(n), l});
  es.push_back({h, l});
  es.push_back({h, l});
  for (int i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (perm[i] == 0) es.push_back({v, h});
    else es.push_back({v, static_cast<Vertex>(n + perm[i])});
  }
  return Multigraph(2 * n + 2, std::move(es));
}

inline Multigraph family_graph(FamilyKind kind, const std::vector<int>& perm) {
  switch (kind) {
    case FamilyKind::B: return barrel(perm);
    case FamilyKind::X: return x_graph(perm);
    case FamilyKind::Y: return y_graph(perm);
    case FamilyKind::A: return a_graph(perm);
    case FamilyKind::APrime: return a_prime_graph(perm);
  }
  throw std::invalid_argument("unknown family kind");
}

/// Loop orders where the barrel reduction applies: g >= 4, and g >= 5 for
/// even parity (the only loop order 3 barrel vanishes there).
inline bool kneissler_supported(int loops, Parity p) {
  return loops >= (p == Parity::Even ? 5 : 4) && loops <= 12;
}

struct BarrelFamily {
  FamilyKind kind = FamilyKind::B;
  int loops = 0;
  Parity parity = Parity::Even;
  /// Canonical nonzero graph -> permutations producing it.
  std::map<Multigraph, std::vector<std::vector<int>>> representatives;

  std::size_t size() const { return representatives.size(); }
  std::vector<Multigraph> graphs() const {
    std::vector<Multigraph> out;
    for (const auto& [g, perms] : representatives) out.push_back(g);
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p = iota_vec(0, n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Canonical forms of every member, zero or not, in permutation order.
inline std::vector<CanonicalForm> family_forms(FamilyKind kind, int perm_size, Parity p,
                                               std::vector<std::vector<int>>& perms) {
  perms = all_permutations(perm_size);
  std::vector<CanonicalForm> forms(perms.size());
  parallel_for(perms.size(), [&](std::size_t i) { forms[i] = canonical_form(family_graph(kind, perms[i]), p); });
  return forms;
}

}  // namespace detail

inline int family_permutation_size(FamilyKind kind, int loops) {
  return kind == FamilyKind::B ? loops - 1 : loops - 2;
}

/// Nonzero isomorphism classes of a family. A and A' additionally drop graphs
/// isomorphic to a barrel graph.
inline BarrelFamily build_family(FamilyKind kind, int loops, Parity p) {
  if (!kneissler_supported(loops, p))
    throw std::invalid_argument("barrel families are not supported for " +
                                std::string(to_string(p)) + " parity at loop order " +
                                std::to_string(loops));
  BarrelFamily fam;
  fam.kind = kind;
  fam.loops = loops;
  fam.parity = p;
  std::unordered_set<Multigraph> barrels;
  if (kind == FamilyKind::A || kind == FamilyKind::APrime) {
    std::vector<std::vector<int>> bp;
    for (auto& f : detail::family_forms(FamilyKind::B, loops - 1, p, bp)) barrels.insert(std::move(f.graph));
  }
  std::vector<std::vector<int>> perms;
  auto forms = detail::family_forms(kind, family_permutation_size(kind, loops), p, perms);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].zero || barrels.count(forms[i].graph)) continue;
    fam.representatives[forms[i].graph].push_back(perms[i]);
  }
  return fam;
}

/// Contraction matrix from the top degree to the one below, restricted to
/// rows B_g then B_g^perp and columns V_g (X classes first, then Y).
struct RestrictedDifferential {
  int loops = 0;
  Parity parity = Parity::Even;
  std::vector<Multigraph> rows;
  std::vector<Multigraph> cols;
  std::size_t dim_B = 0;
  std::size_t dim_Bperp = 0;
  std::size_t x_columns = 0;  // columns [0, x_columns) come from X graphs
  IntSparseMatrix matrix;

  std::vector<std::uint32_t> perp_rows() const {
    std::vector<std::uint32_t> r;
    for (std::size_t i = dim_B; i < dim_B + dim_Bperp; ++i) r.push_back(static_cast<std::uint32_t>(i));
    return r;
  }
  std::vector<std::uint32_t> x_cols() const {
    std::vector<std::uint32_t> c;
    for (std::size_t j = 0; j < x_columns; ++j) c.push_back(static_cast<std::uint32_t>(j));
    return c;
  }
};

/// The three ways to split the unique 4-valent vertex of g into two
/// trivalent vertices joined by a new edge.
inline std::vector<Multigraph> split_four_valent(const Multigraph& g) {
  const auto deg = g.degrees();
  int x = -1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (deg[v] == 4) {
      if (x >= 0) throw std::invalid_argument("graph has more than one 4-valent vertex");
      x = v;
    } else if (deg[v] != 3) {
      throw std::invalid_argument("graph is not trivalent apart from one 4-valent vertex");
    }
  }
  if (x < 0) throw std::invalid_argument("graph has no 4-valent vertex");
  std::vector<int> incident;
  for (int i = 0; i < g.num_edges(); ++i)
    if (g.edges()[i].u == x || g.edges()[i].v == x) incident.push_back(i);
  const auto y = static_cast<Vertex>(g.num_vertices());
  std::vector<Multigraph> out;
  for (int partner = 1; partner < 4; ++partner) {
    // Half-edges 0 and `partner` stay at x; the other two move to y.
    std::vector<Edge> es = g.edges();
    for (int h = 1; h < 4; ++h) {
      if (h == partner) continue;
      Edge& e = es[incident[h]];
      if (e.u == x) e.u = y;
      else e.v = y;
    }
    es.push_back({static_cast<Vertex>(x), y});
    out.emplace_back(g.num_vertices() + 1, std::move(es));
  }
  return out;
}

/// Coefficient of the canonical generator `target` in the contraction
/// differential of the canonical generator `source`.
inline std::int64_t contraction_coefficient(const Multigraph& source, const Multigraph& target, Parity p) {
  std::int64_t c = 0;
  for (int e = 0; e < source.num_edges(); ++e) {
    auto r = contract_edge(source, e, p);
    if (!r.is_zero() && r.graph() == target) c += r.sign();
  }
  return c;
}

inline RestrictedDifferential restricted_differential(int loops, Parity p) {
  RestrictedDifferential rd;
  rd.loops = loops;
  rd.parity = p;
  const auto b = build_family(FamilyKind::B, loops, p);
  const auto x = build_family(FamilyKind::X, loops, p);
  const auto y = build_family(FamilyKind::Y, loops, p);
  const auto a = build_family(FamilyKind::A, loops, p);
  const auto ap = build_family(FamilyKind::APrime, loops, p);

  rd.rows = b.graphs();
  rd.dim_B = rd.rows.size();
  std::unordered_set<Multigraph> perp;
  for (const auto* fam : {&a, &ap})
    for (const auto& [g, perms] : fam->representatives) perp.insert(g);
  std::vector<Multigraph> perp_sorted(perp.begin(), perp.end());
  std::sort(perp_sorted.begin(), perp_sorted.end());
  rd.dim_Bperp = perp_sorted.size();
  rd.rows.insert(rd.rows.end(), perp_sorted.begin(), perp_sorted.end());

  rd.cols = x.graphs();
  rd.x_columns = rd.cols.size();
  for (const auto& [g, perms] : y.representatives)
    if (!x.representatives.count(g)) rd.cols.push_back(g);

  std::unordered_map<Multigraph, std::uint32_t> row_index;
  for (std::size_t i = 0; i < rd.rows.size(); ++i) row_index.emplace(rd.rows[i], static_cast<std::uint32_t>(i));

  std::vector<std::vector<Triplet>> parts(rd.cols.size());
  parallel_for(rd.cols.size(), [&](std::size_t j) {
    std::vector<Multigraph> seen;
    for (const auto& t : split_four_valent(rd.cols[j])) {
      auto form = canonical_form(t, p);
      if (form.zero || std::find(seen.begin(), seen.end(), form.graph) != seen.end()) continue;
      seen.push_back(form.graph);
      const std::int64_t c = contraction_coefficient(form.graph, rd.cols[j], p);
      if (c == 0) continue;
      auto it = row_index.find(form.graph);
      if (it == row_index.end())
        throw ImageOutsideSpan("differential of " + rd.cols[j].to_string() + " hits " +
                               form.graph.to_string() + ", which is neither a barrel nor in the complement");
      parts[j].push_back({it->second, static_cast<std::uint32_t>(j), c});
    }
  });
  std::vector<Triplet> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  rd.matrix = IntSparseMatrix(rd.rows.size(), rd.cols.size(), std::move(all));
  return rd;
}

struct KneisslerReport {
  int g = 0;
  Parity parity = Parity::Even;
  std::size_t dim_B = 0;
  std::size_t dim_Bperp = 0;
  std::size_t dim_V = 0;
  std::size_t rank_d = 0;
  std::int64_t upper_bound = 0;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  RankMethod method = RankMethod::Gauss;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const {
    return {{"g", g},
            {"parity", std::string(to_string(parity))},
            {"dim_B", dim_B},
            {"dim_Bperp", dim_Bperp},
            {"dim_V", dim_V},
            {"rank_d", rank_d},
            {"upper_bound", upper_bound},
            {"prime", prime},
            {"method", std::string(to_string(method))},
            {"seed", seed}};
  }
};

/// Rank of the block of rows belonging to B_g^perp.
inline std::size_t perp_block_rank(const RestrictedDifferential& rd,
                                   std::uint64_t prime = PrimeField::kDefaultPrime) {
  return gauss_rank(reduce_mod_p(rd.matrix.select_rows(rd.perp_rows()), PrimeField(prime))).rank;
}

inline KneisslerReport report_from(const RestrictedDifferential& rd, std::uint64_t prime,
                                   RankMethod method = RankMethod::Gauss, std::uint64_t seed = 0) {
  KneisslerReport r;
  r.g = rd.loops;
  r.parity = rd.parity;
  r.dim_B = rd.dim_B;
  r.dim_Bperp = rd.dim_Bperp;
  r.dim_V = rd.cols.size();
  r.prime = prime;
  r.method = method;
  r.seed = method == RankMethod::Gauss ? 0 : seed;
  const auto m = reduce_mod_p(rd.matrix, PrimeField(prime));
  r.rank_d = compute_rank(m, method, seed, PivotStrategy::two_phase(rd.perp_rows(), rd.x_cols())).rank;
  r.upper_bound = static_cast<std::int64_t>(r.dim_B) - static_cast<std::int64_t>(r.rank_d) +
                  static_cast<std::int64_t>(r.dim_Bperp);
  return r;
}

/// dim H^top <= dim B_g - rank(d) + dim B_g^perp, with the rank over F_p.
inline KneisslerReport upper_bound(int loops, Parity p, std::uint64_t prime = PrimeField::kDefaultPrime,
                                   RankMethod method = RankMethod::Gauss, std::uint64_t seed = 0) {
  return report_from(restricted_differential(loops, p), prime, method, seed);
}

}  // namespace gcx
