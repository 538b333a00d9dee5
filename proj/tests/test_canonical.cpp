#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "gcx/canonical.hpp"
#include "gcx/reference.hpp"

using gcx::Multigraph;
using gcx::Parity;

namespace {

Multigraph k4() { return Multigraph::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
Multigraph theta() { return Multigraph::from_pairs(2, {{0, 1}, {0, 1}, {0, 1}}); }
Multigraph k33() {
  return Multigraph::from_pairs(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
}

}  // namespace

TEST(Canonical, ThetaVanishesInEvenParity) {
  EXPECT_TRUE(gcx::canonicalize(theta(), Parity::Even).is_zero());
  EXPECT_FALSE(gcx::canonicalize(theta(), Parity::Odd).is_zero());
}

TEST(Canonical, TetrahedronSurvivesBothParities) {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    EXPECT_FALSE(gcx::canonicalize(k4(), p).is_zero());
    EXPECT_FALSE(gcx::reference::brute_force_scan(k4(), p).zero);
  }
}

TEST(Canonical, AutomorphismCounts) {
  EXPECT_EQ(gcx::automorphism_group_size(k4()), 24u);
  EXPECT_EQ(gcx::automorphism_group_size(theta()), 12u);
  EXPECT_EQ(gcx::automorphism_group_size(k33()), 72u);
}

TEST(Canonical, IsomorphicGraphsShareCanonicalForm) {
  auto a = Multigraph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  auto b = Multigraph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}});
  for (Parity p : {Parity::Even, Parity::Odd})
    EXPECT_EQ(gcx::canonical_form(a, p).graph, gcx::canonical_form(b, p).graph);
  auto c = Multigraph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 1}});
  EXPECT_NE(gcx::canonical_form(a, Parity::Odd).graph, gcx::canonical_form(c, Parity::Odd).graph);
}

TEST(Canonical, OrientationSignMatchesReference) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    std::vector<gcx::Edge> es;
    for (int i = 0; i < n + 2; ++i) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) es.push_back({static_cast<gcx::Vertex>(a), static_cast<gcx::Vertex>(b)});
    }
    Multigraph g(n, es);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    EXPECT_EQ(gcx::orientation_sign(g, sigma, Parity::Odd),
              gcx::reference::pushforward_sign(g, sigma, Parity::Odd));
    if (g.is_simple()) {
      EXPECT_EQ(gcx::orientation_sign(g, sigma, Parity::Even),
                gcx::reference::pushforward_sign(g, sigma, Parity::Even));
    }
  }
}

TEST(Canonical, AgreesWithBruteForceOnRandomCubicLikeGraphs) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 4 + static_cast<int>(rng() % 4);
    std::vector<gcx::Edge> es;
    while (static_cast<int>(es.size()) < 3 * n / 2 + 1) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b) es.push_back({static_cast<gcx::Vertex>(a), static_cast<gcx::Vertex>(b)});
    }
    Multigraph g(n, es);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const auto cf = gcx::canonical_form(g, p);
      const auto scan = gcx::reference::brute_force_scan(g, p);
      ASSERT_EQ(cf.zero, scan.zero) << g.to_string();
      ASSERT_EQ(cf.vertex_automorphisms, scan.vertex_automorphisms) << g.to_string();
      ASSERT_EQ(cf.graph, g.relabeled(cf.labeling));
      if (!cf.zero) {
        ASSERT_EQ(cf.sign, gcx::reference::pushforward_sign(g, cf.labeling, p));
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        const auto other = gcx::canonical_form(g.relabeled(sigma), p);
        ASSERT_EQ(other.graph, cf.graph);
        ASSERT_EQ(cf.sign, gcx::reference::pushforward_sign(g, sigma, p) * other.sign);
      }
    }
  }
}
