#include <random>

#include <gtest/gtest.h>

#include "gcx/graph.hpp"
#include "gcx/reference.hpp"

using gcx::Multigraph;

namespace {

Multigraph k4() { return Multigraph::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Multigraph theta() { return Multigraph::from_pairs(2, {{0, 1}, {0, 1}, {0, 1}}); }

}  // namespace

TEST(Multigraph, NormalFormSortsAndOrientsEdges) {
  auto g = Multigraph::from_pairs(3, {{2, 1}, {1, 0}, {0, 2}});
  EXPECT_EQ(g.to_string(), "3 3 0 1 0 2 1 2");
  EXPECT_EQ(g.loop_order(), 1);
}

TEST(Multigraph, ParseRoundTrip) {
  const auto g = k4();
  EXPECT_EQ(Multigraph::parse(g.to_string()), g);
  EXPECT_EQ(Multigraph::parse("2 3 0 1 1 0 0 1"), theta());
}

TEST(Multigraph, RejectsMalformedInput) {
  EXPECT_THROW(Multigraph::parse("2 1 0 0"), std::invalid_argument);
  EXPECT_THROW(Multigraph::parse("2 2 0 1"), std::invalid_argument);
  EXPECT_THROW(Multigraph::parse("2 1 0 5"), std::invalid_argument);
  EXPECT_THROW(Multigraph::parse("2 1 0 1 7"), std::invalid_argument);
}

TEST(Multigraph, ParallelEdgesAndDegrees) {
  EXPECT_TRUE(theta().has_parallel_edges());
  EXPECT_FALSE(k4().has_parallel_edges());
  EXPECT_EQ(theta().degrees(), (std::vector<int>{3, 3}));
  EXPECT_EQ(k4().min_degree(), 3);
}

TEST(Connectivity, SmallCases) {
  EXPECT_TRUE(gcx::is_connected(k4()));
  auto two_triangles =
      Multigraph::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_FALSE(gcx::is_connected(two_triangles));
  EXPECT_FALSE(gcx::is_triconnected(two_triangles));
  EXPECT_TRUE(gcx::is_triconnected(k4()));
  EXPECT_FALSE(gcx::is_triconnected(theta()));
}

TEST(Connectivity, TriconnectedAgreesWithVertexDeletionScan) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int m = static_cast<int>(rng() % (2 * n + 6));
    std::vector<std::pair<int, int>> es;
    std::vector<gcx::Edge> edges;
    while (static_cast<int>(es.size()) < m) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a == b) continue;
      es.push_back({std::min(a, b), std::max(a, b)});
      edges.push_back({static_cast<gcx::Vertex>(a), static_cast<gcx::Vertex>(b)});
    }
    Multigraph g(n, edges);
    ASSERT_EQ(gcx::is_triconnected(g), gcx::reference::triconnected(n, es)) << g.to_string();
    ASSERT_EQ(gcx::is_connected(g), gcx::reference::connected(n, es)) << g.to_string();
  }
}

TEST(PermutationSign, MatchesInversionCount) {
  std::vector<int> p{0, 1, 2, 3, 4};
  do {
    EXPECT_EQ(gcx::permutation_sign(p), gcx::reference::inversion_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(Relabel, AppliesPermutation) {
  auto g = Multigraph::from_pairs(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(g.relabeled({2, 0, 1}), Multigraph::from_pairs(3, {{2, 0}, {0, 1}}));
}
