#pragma once

// Self-check suites. Each criterion returns a list of labelled results; the
// CLI `check` command and the acceptance binary both run them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gcx/cohomology.hpp"
#include "gcx/kneissler.hpp"
#include "gcx/linalg.hpp"
#include "gcx/reference.hpp"

namespace gcx::checks {

struct CheckLine {
  std::string label;
  bool ok = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckLine> lines;

  bool passed() const {
    return !lines.empty() &&
           std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
  }
  void add(std::string label, bool ok, std::string detail = {}) {
    lines.push_back({std::move(label), ok, std::move(detail)});
  }
  std::vector<CheckLine> failures() const {
    std::vector<CheckLine> out;
    for (const auto& l : lines)
      if (!l.ok) out.push_back(l);
    return out;
  }
};

inline std::vector<int> even_table_loops() { return {3, 4, 5, 6, 7}; }
inline std::vector<int> odd_table_loops() { return {2, 3, 4, 5, 6}; }

/// Expected (dim B, dim B^perp, dim V, rank d, bound) rows.
struct KneisslerRow {
  Parity parity;
  int g;
  std::array<std::int64_t, 5> columns;
};

inline std::vector<KneisslerRow> published_kneissler_rows() {
  return {{Parity::Even, 5, {0, 0, 1, 0, 0}},     {Parity::Even, 6, {2, 2, 4, 3, 1}},
          {Parity::Even, 7, {2, 6, 19, 8, 0}},    {Parity::Even, 8, {6, 39, 143, 45, 0}},
          {Parity::Odd, 5, {2, 1, 1, 1, 2}},      {Parity::Odd, 6, {3, 3, 4, 4, 2}},
          {Parity::Odd, 7, {9, 13, 27, 19, 3}},   {Parity::Odd, 8, {27, 65, 167, 88, 4}}};
}

inline std::string spec_label(const ComplexSpec& s) { return to_string(s); }

/// Memoizes the expensive objects shared between criteria.
class Context {
 public:
  const ComplexData& complex(const ComplexSpec& s) {
    auto it = complexes_.find(key(s));
    if (it == complexes_.end()) it = complexes_.emplace(key(s), build_complex(s)).first;
    return it->second;
  }

  const CohomologyTable& table(const ComplexSpec& s) {
    auto it = tables_.find(key(s));
    if (it == tables_.end()) {
      CohomologyOptions opt;
      opt.check_prime = 10007;
      it = tables_.emplace(key(s), cohomology_from(complex(s), opt)).first;
    }
    return it->second;
  }

  const RestrictedDifferential& restricted(Parity p, int g) {
    const auto k = std::make_pair(static_cast<int>(p), g);
    auto it = restricted_.find(k);
    if (it == restricted_.end()) it = restricted_.emplace(k, restricted_differential(g, p)).first;
    return it->second;
  }

  std::vector<ComplexSpec> table_specs(Variant v) const {
    std::vector<ComplexSpec> out;
    for (int g : even_table_loops()) out.push_back({Parity::Even, v, g});
    for (int g : odd_table_loops()) out.push_back({Parity::Odd, v, g});
    return out;
  }

 private:
  static std::string key(const ComplexSpec& s) { return to_string(s); }
  std::map<std::string, ComplexData> complexes_;
  std::map<std::string, CohomologyTable> tables_;
  std::map<std::pair<int, int>, RestrictedDifferential> restricted_;
};

inline CriterionResult d_squared(Context& ctx) {
  CriterionResult r{1, "d o d = 0 on integer differentials", {}};
  for (Parity p : {Parity::Even, Parity::Odd})
    for (Variant v : {Variant::Full, Variant::Triconnected}) {
      const int lo = p == Parity::Even ? 3 : 2;
      for (int g = lo; g <= 6; ++g) {
        const ComplexSpec s{p, v, g};
        const auto& data = ctx.complex(s);
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i + 1 < data.contraction.size(); ++i)
          nonzero += multiply(data.contraction[i], data.contraction[i + 1]).nnz();
        r.add(spec_label(s), nonzero == 0, "nonzero entries in d^2: " + std::to_string(nonzero));
      }
    }
  return r;
}

inline void compare_table(CriterionResult& r, const CohomologyTable& t) {
  auto cmp = compare_with_registry(t);
  bool certified = std::all_of(t.rows.begin(), t.rows.end(),
                               [](const CohomologyRow& row) { return row.certified; });
  std::ostringstream d;
  for (const auto& m : cmp.matches)
    d << "h(" << m.k << ")=" << m.computed << (m.ok ? "" : " expected " + std::to_string(m.expected))
      << ' ';
  r.add(spec_label(t.spec), cmp.all_match() && !cmp.matches.empty() && certified,
        d.str() + (certified ? "" : "(uncertified rows)"));
}

inline CriterionResult even_tables(Context& ctx) {
  CriterionResult r{2, "even cohomology matches the published table for g <= 7", {}};
  for (int g : even_table_loops()) compare_table(r, ctx.table({Parity::Even, Variant::Full, g}));
  return r;
}

inline CriterionResult odd_tables(Context& ctx) {
  CriterionResult r{3, "odd cohomology matches the published table for g <= 6", {}};
  for (int g : odd_table_loops()) compare_table(r, ctx.table({Parity::Odd, Variant::Full, g}));
  return r;
}

inline CriterionResult kneissler_rows(Context& ctx) {
  CriterionResult r{4, "top-degree bound columns match the published rows for g = 5..8", {}};
  for (const auto& row : published_kneissler_rows()) {
    const auto rep = report_from(ctx.restricted(row.parity, row.g), PrimeField::kDefaultPrime);
    const std::array<std::int64_t, 5> got{static_cast<std::int64_t>(rep.dim_B),
                                          static_cast<std::int64_t>(rep.dim_Bperp),
                                          static_cast<std::int64_t>(rep.dim_V),
                                          static_cast<std::int64_t>(rep.rank_d), rep.upper_bound};
    std::ostringstream d;
    d << "got (";
    for (std::size_t i = 0; i < 5; ++i) d << (i ? "," : "") << got[i];
    d << ") expected (";
    for (std::size_t i = 0; i < 5; ++i) d << (i ? "," : "") << row.columns[i];
    d << ')';
    r.add(std::string(to_string(row.parity)) + " g" + std::to_string(row.g), got == row.columns, d.str());
  }
  return r;
}

inline CriterionResult surjectivity(Context& ctx) {
  CriterionResult r{5, "the B^perp block of the restricted differential is surjective", {}};
  for (const auto& row : published_kneissler_rows()) {
    const auto& rd = ctx.restricted(row.parity, row.g);
    const auto rank = perp_block_rank(rd);
    r.add(std::string(to_string(row.parity)) + " g" + std::to_string(row.g), rank == rd.dim_Bperp,
          "rank " + std::to_string(rank) + " of " + std::to_string(rd.dim_Bperp) + " rows");
  }
  return r;
}

inline CriterionResult quasi_isomorphism(Context& ctx) {
  CriterionResult r{6, "full and triconnected cohomology agree", {}};
  for (const auto& s : ctx.table_specs(Variant::Triconnected)) {
    const auto& data = ctx.complex(s);
    const bool empty = std::all_of(data.slices.begin(), data.slices.end(),
                                   [](const BasisSlice& b) { return b.empty(); });
    if (empty) continue;
    const auto& tri = ctx.table(s);
    const auto& full = ctx.table({s.parity, Variant::Full, s.loops});
    bool same = true;
    std::ostringstream d;
    for (const auto& row : full.rows) {
      if (row.h != tri.h(row.k)) {
        same = false;
        d << "k=" << row.k << " full " << row.h << " tri " << tri.h(row.k) << ' ';
      }
    }
    r.add(spec_label(s), same, d.str());
  }
  return r;
}

namespace detail {

inline FpSparseMatrix random_sparse(std::mt19937_64& rng, const PrimeField& f) {
  std::uniform_int_distribution<int> dim(1, 60);
  const int rows = dim(rng), cols = dim(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = 0.02 + 0.3 * unit(rng);
  std::vector<FpTriplet> t;
  if (unit(rng) < 0.4) {
    // Product of two thin factors: rank at most `inner`.
    const int inner = std::uniform_int_distribution<int>(0, std::min(rows, cols))(rng);
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(inner)),
        b(inner, std::vector<std::uint64_t>(cols));
    for (auto& row : a)
      for (auto& x : row) x = unit(rng) < 0.3 ? rng() % f.prime() : 0;
    for (auto& row : b)
      for (auto& x : row) x = unit(rng) < 0.3 ? rng() % f.prime() : 0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        std::uint64_t s = 0;
        for (int k = 0; k < inner; ++k) s = f.add(s, f.mul(a[i][k], b[k][j]));
        if (s) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), s});
      }
  } else {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (unit(rng) < density)
          t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                       1 + rng() % (f.prime() - 1)});
  }
  return FpSparseMatrix(f, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(t));
}

inline std::vector<std::vector<std::int64_t>> random_integer_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 40);
  const int rows = dim(rng), cols = dim(rng);
  std::uniform_int_distribution<int> val(-3, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = 0.05 + 0.5 * unit(rng);
  std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& row : a)
    for (auto& x : row)
      if (unit(rng) < density) x = val(rng);
  // Duplicate some rows so the rank is often deficient.
  for (int i = 1; i < rows; ++i)
    if (unit(rng) < 0.2) a[i] = a[std::uniform_int_distribution<int>(0, i - 1)(rng)];
  return a;
}

inline IntSparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& a) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j]) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), a[i][j]});
  return IntSparseMatrix(a.size(), a.empty() ? 0 : a[0].size(), std::move(t));
}

inline PivotStrategy shuffled_two_phase(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<std::uint32_t> r, c;
  for (std::uint32_t i = 0; i < rows; ++i)
    if (rng() % 3 == 0) r.push_back(i);
  for (std::uint32_t j = 0; j < cols; ++j)
    if (rng() % 3 == 0) c.push_back(j);
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  return PivotStrategy::two_phase(std::move(r), std::move(c));
}

}  // namespace detail

inline CriterionResult linear_algebra(Context& ctx, std::uint64_t seed = 20240601) {
  CriterionResult r{7, "linear algebra properties", {}};
  std::mt19937_64 rng(seed);
  const PrimeField f(PrimeField::kDefaultPrime);

  // (a) Wiedemann never exceeds Gauss and usually equals it.
  std::size_t runs = 0, equal = 0, exceed = 0;
  auto compare_ranks = [&](const FpSparseMatrix& m, std::uint64_t s) {
    const auto exact = gauss_rank(m).rank;
    WiedemannOptions opt;
    opt.seed = s;
    const auto w = wiedemann_rank(m, opt).rank;
    ++runs;
    if (w == exact) ++equal;
    if (w > exact) ++exceed;
  };
  for (int i = 0; i < 200; ++i) compare_ranks(detail::random_sparse(rng, f), rng());
  std::vector<IntSparseMatrix> differentials;
  for (const auto& s : ctx.table_specs(Variant::Full))
    for (const auto& m : ctx.complex(s).contraction) differentials.push_back(m);
  for (const auto& m : differentials) compare_ranks(reduce_mod_p(m, f), rng());
  r.add("(a) wiedemann <= gauss", exceed == 0 && equal * 100 >= runs * 95,
        std::to_string(equal) + "/" + std::to_string(runs) + " equal, " + std::to_string(exceed) +
            " above");

  // (b) Pivot strategy does not change the Gauss rank.
  std::size_t strategy_mismatch = 0, strategy_runs = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = detail::random_sparse(rng, f);
    const auto base = gauss_rank(m).rank;
    const auto two = gauss_rank(m, detail::shuffled_two_phase(rng, m.nrows(), m.ncols())).rank;
    const auto dense = reference::dense_rank_mod_p(
        [&] {
          std::vector<std::vector<std::int64_t>> d(m.nrows(), std::vector<std::int64_t>(m.ncols()));
          for (const auto& t : m.triplets()) d[t.row][t.col] = static_cast<std::int64_t>(t.value);
          return d;
        }(),
        f.prime());
    ++strategy_runs;
    if (base != two || base != dense) ++strategy_mismatch;
  }
  for (const auto& m : differentials) {
    const auto fm = reduce_mod_p(m, f);
    ++strategy_runs;
    if (gauss_rank(fm).rank != gauss_rank(fm, detail::shuffled_two_phase(rng, fm.nrows(), fm.ncols())).rank)
      ++strategy_mismatch;
  }
  r.add("(b) gauss rank independent of pivoting", strategy_mismatch == 0,
        std::to_string(strategy_mismatch) + " mismatches in " + std::to_string(strategy_runs));

  // (c) Rank mod p never exceeds the rational rank.
  std::size_t rational_runs = 0, rational_bad = 0;
  auto check_rational = [&](const IntSparseMatrix& m) {
    if (m.nrows() > 200 || m.ncols() > 200) return;
    const auto q = reference::rational_rank(m.to_dense());
    for (std::uint64_t p : {std::uint64_t{3}, std::uint64_t{5}, PrimeField::kDefaultPrime}) {
      ++rational_runs;
      if (gauss_rank(reduce_mod_p(m, PrimeField(p))).rank > q) ++rational_bad;
    }
  };
  for (int i = 0; i < 100; ++i) check_rational(detail::from_dense(detail::random_integer_matrix(rng)));
  for (const auto& m : differentials) check_rational(m);
  r.add("(c) F_p rank <= rational rank", rational_bad == 0,
        std::to_string(rational_bad) + " violations in " + std::to_string(rational_runs));

  // (d) Berlekamp-Massey recovers planted recurrences.
  std::size_t bm_bad = 0;
  const PrimeField big(1000000007);
  for (std::size_t d = 1; d <= 50; ++d)
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<std::uint64_t> poly(d + 1), init(d);
      for (auto& c : poly) c = rng() % big.prime();
      poly[0] = 1 + rng() % (big.prime() - 1);
      poly[d] = 1;
      for (auto& x : init) x = rng() % big.prime();
      const auto seq = reference::recurrence_terms(poly, init, 2 * d + 4, big);
      if (berlekamp_massey(seq, big) != poly) ++bm_bad;
    }
  r.add("(d) berlekamp-massey recovers degree <= 50 recurrences", bm_bad == 0,
        std::to_string(bm_bad) + " failures in 200");
  return r;
}

inline CriterionResult euler(Context& ctx) {
  CriterionResult r{8, "Euler characteristic identity", {}};
  for (const auto& s : ctx.table_specs(Variant::Full)) {
    const auto& t = ctx.table(s);
    const auto e = euler_characteristic(t);
    r.add(spec_label(s), e.consistent(),
          "chain " + std::to_string(e.chain_chi) + " cohomology " + std::to_string(e.cohomology_chi));
  }
  return r;
}

namespace detail {

struct CanonTally {
  std::size_t graphs = 0, failures = 0;
  std::string first_failure;
};

inline void check_canonical(const Multigraph& g, std::mt19937_64& rng, CanonTally& tally) {
  ++tally.graphs;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const auto cf = canonical_form(g, p);
    const auto scan = reference::brute_force_scan(g, p);
    bool ok = cf.zero == scan.zero && cf.vertex_automorphisms == scan.vertex_automorphisms &&
              cf.graph == g.relabeled(cf.labeling);
    if (ok && !cf.zero) ok = cf.sign == reference::pushforward_sign(g, cf.labeling, p);
    std::vector<int> sigma(g.num_vertices());
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int t = 0; t < 2 && ok; ++t) {
      std::shuffle(sigma.begin(), sigma.end(), rng);
      const auto h = g.relabeled(sigma);
      const auto ch = canonical_form(h, p);
      ok = ch.graph == cf.graph && ch.zero == cf.zero;
      if (ok && !cf.zero) ok = cf.sign == reference::pushforward_sign(g, sigma, p) * ch.sign;
    }
    if (!ok) {
      if (tally.failures == 0)
        tally.first_failure = std::string(to_string(p)) + ": " + g.to_string();
      ++tally.failures;
    }
  }
}

}  // namespace detail

inline CriterionResult canonicalization(std::uint64_t seed = 7) {
  CriterionResult r{9, "canonical forms agree with a brute-force permutation scan", {}};
  std::mt19937_64 rng(seed);

  // Every multigraph with <= 6 vertices and <= 9 edges up to isomorphism: each
  // class has a member whose degrees are nonincreasing in the vertex order.
  detail::CanonTally small;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    for (int m = 0; m <= 9; ++m) {
      if (pairs.empty() && m > 0) break;
      std::vector<int> pick(m, 0);
      for (;;) {
        std::vector<int> deg(n, 0);
        for (int i : pick) {
          ++deg[pairs[i].first];
          ++deg[pairs[i].second];
        }
        if (std::is_sorted(deg.rbegin(), deg.rend())) {
          std::vector<Edge> es;
          for (int i : pick)
            es.push_back({static_cast<Vertex>(pairs[i].first), static_cast<Vertex>(pairs[i].second)});
          detail::check_canonical(Multigraph(n, std::move(es)), rng, small);
        }
        int i = m - 1;
        while (i >= 0 && pick[i] == static_cast<int>(pairs.size()) - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[i];
      }
    }
  }
  r.add("exhaustive <= 6 vertices, <= 9 edges", small.failures == 0,
        std::to_string(small.graphs) + " graphs, " + std::to_string(small.failures) + " failures " +
            small.first_failure);

  detail::CanonTally random;
  std::uniform_int_distribution<int> edges(6, 14), vertex(0, 6);
  for (int i = 0; i < 1000; ++i) {
    const int m = edges(rng);
    std::vector<Edge> es;
    while (static_cast<int>(es.size()) < m) {
      int a = vertex(rng), b = vertex(rng);
      if (a != b) es.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    }
    detail::check_canonical(Multigraph(7, std::move(es)), rng, random);
  }
  r.add("1000 random 7-vertex graphs", random.failures == 0,
        std::to_string(random.failures) + " failures " + random.first_failure);
  return r;
}

/// Criteria grouped by CLI suite name.
inline std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "d2") return {1};
  if (suite == "tables") return {2, 3, 6, 8};
  if (suite == "kneissler") return {4, 5};
  if (suite == "linalg") return {7};
  if (suite == "canon") return {9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

inline CriterionResult run_criterion(int id, Context& ctx) {
  switch (id) {
    case 1: return d_squared(ctx);
    case 2: return even_tables(ctx);
    case 3: return odd_tables(ctx);
    case 4: return kneissler_rows(ctx);
    case 5: return surjectivity(ctx);
    case 6: return quasi_isomorphism(ctx);
    case 7: return linear_algebra(ctx);
    case 8: return euler(ctx);
    case 9: return canonicalization();
  }
  throw std::invalid_argument("no criterion " + std::to_string(id));
}

}  // namespace gcx::checks
