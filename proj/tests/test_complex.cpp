#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "gcx/complex.hpp"
#include "gcx/reference.hpp"

using gcx::ComplexSpec;
using gcx::Parity;
using gcx::Variant;

TEST(Degrees, VertexCountAndDegreeAreInverse) {
  for (Parity p : {Parity::Even, Parity::Odd})
    for (int g = 2; g <= 8; ++g)
      for (int v = gcx::min_vertices(g); v <= gcx::max_vertices(g); ++v) {
        const int k = gcx::cohomological_degree(p, g, v);
        EXPECT_EQ(gcx::vertex_count(p, g, k), v);
      }
  EXPECT_EQ(gcx::vertex_count(Parity::Even, 3, 0), 4);
  EXPECT_EQ(gcx::vertex_count(Parity::Odd, 2, -3), 2);
  EXPECT_FALSE(gcx::vertex_count(Parity::Even, 3, 1).has_value());
  EXPECT_THROW(gcx::vertex_count(Parity::Even, 1, 0), std::invalid_argument);
}

TEST(Cubic, CountsMatchVertexScan) {
  // Connected cubic multigraphs without tadpoles, counted independently for
  // small loop orders.
  for (int g = 2; g <= 4; ++g) {
    std::size_t naive_all = 0;
    const int v = 2 * g - 2, m = 3 * g - 3;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) pairs.push_back({a, b});
    std::set<std::vector<std::pair<int, int>>> classes;
    std::vector<int> pick(m, 0);
    for (;;) {
      std::vector<int> deg(v, 0);
      std::vector<std::pair<int, int>> es;
      for (int i : pick) {
        es.push_back(pairs[i]);
        ++deg[pairs[i].first];
        ++deg[pairs[i].second];
      }
      if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; }) &&
          gcx::reference::connected(v, es)) {
        std::vector<gcx::Edge> edges;
        for (auto [a, b] : es) edges.push_back({static_cast<gcx::Vertex>(a), static_cast<gcx::Vertex>(b)});
        classes.insert(gcx::reference::brute_force_scan(gcx::Multigraph(v, edges), Parity::Odd).minimal_edges);
      }
      int i = m - 1;
      while (i >= 0 && pick[i] == static_cast<int>(pairs.size()) - 1) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < m; ++j) pick[j] = pick[i];
    }
    naive_all = classes.size();
    EXPECT_EQ(gcx::cubic_graphs(g).size(), naive_all) << "g=" << g;
  }
}

TEST(Cubic, SimpleCountsMatchKnownSequence) {
  // Simple connected cubic graphs on 2g-2 vertices.
  const std::vector<std::size_t> simple{0, 1, 2, 5, 19};
  for (int g = 2; g <= 6; ++g) {
    std::size_t count = 0;
    for (const auto& c : gcx::cubic_graphs(g)) count += c.is_simple();
    EXPECT_EQ(count, simple[g - 2]) << "g=" << g;
  }
}

TEST(Basis, SlicesMatchNaiveEnumeration) {
  for (Parity p : {Parity::Even, Parity::Odd})
    for (Variant var : {Variant::Full, Variant::Triconnected})
      for (int g = 2; g <= 4; ++g) {
        const ComplexSpec spec{p, var, g};
        const auto slices = gcx::enumerate_slices(spec);
        for (const auto& s : slices)
          EXPECT_EQ(s.size(), gcx::reference::naive_basis_size(p, var == Variant::Triconnected, g,
                                                               s.num_vertices()))
              << gcx::to_string(spec) << " V=" << s.num_vertices();
      }
}

TEST(Basis, SmallExamples) {
  EXPECT_EQ(gcx::enumerate_basis({Parity::Even, Variant::Full, 3}, 4).size(), 1u);
  EXPECT_EQ(gcx::enumerate_basis({Parity::Odd, Variant::Full, 2}, 2).size(), 1u);
  EXPECT_EQ(gcx::enumerate_basis({Parity::Even, Variant::Full, 3}, 5).size(), 0u);
  EXPECT_EQ(gcx::reference::naive_basis_size(Parity::Even, false, 3, 5), 0u);
  EXPECT_THROW(gcx::enumerate_basis({Parity::Even, Variant::Full, 3}, 0), std::invalid_argument);
}

TEST(Basis, GeneratorsAreCanonicalAndAdmissible) {
  const ComplexSpec spec{Parity::Even, Variant::Full, 5};
  for (const auto& s : gcx::enumerate_slices(spec))
    for (const auto& g : s.generators()) {
      EXPECT_EQ(gcx::canonical_form(g, spec.parity).graph, g);
      EXPECT_GE(g.min_degree(), 3);
      EXPECT_TRUE(gcx::is_connected(g));
      EXPECT_FALSE(g.has_parallel_edges());
      EXPECT_EQ(g.loop_order(), 5);
    }
}

TEST(Contraction, ParallelCopyGivesZero) {
  auto g = gcx::Multigraph::from_pairs(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}, {1, 2}});
  EXPECT_TRUE(gcx::contract_edge(g, 0, Parity::Odd).is_zero());
}

TEST(Differential, SquaresToZeroOnSmallComplexes) {
  for (Parity p : {Parity::Even, Parity::Odd})
    for (int g = 3; g <= 5; ++g) {
      const auto slices = gcx::enumerate_slices({p, Variant::Full, g});
      for (std::size_t i = 0; i + 2 < slices.size(); ++i) {
        const auto d1 = gcx::differential_matrix(slices[i + 1], slices[i]);
        const auto d2 = gcx::differential_matrix(slices[i + 2], slices[i + 1]);
        EXPECT_EQ(gcx::multiply(d1, d2).nnz(), 0u);
      }
    }
}

TEST(Differential, RejectsNonConsecutiveSlices) {
  const auto slices = gcx::enumerate_slices({Parity::Odd, Variant::Full, 4});
  EXPECT_THROW(gcx::differential_matrix(slices[0], slices[2]), std::invalid_argument);
}
