#include <gtest/gtest.h>

#include "gcx/cohomology.hpp"

using gcx::ComplexSpec;
using gcx::Parity;
using gcx::Variant;

TEST(Cohomology, EvenLoopThree) {
  const auto t = gcx::cohomology_dims({Parity::Even, Variant::Full, 3});
  EXPECT_EQ(t.h(0), 1);
  const auto e = gcx::euler_characteristic(t);
  EXPECT_EQ(e.chain_chi, 1);
  EXPECT_EQ(e.cohomology_chi, 1);
}

TEST(Cohomology, EvenLoopSix) {
  const auto t = gcx::cohomology_dims({Parity::Even, Variant::Full, 6});
  for (const auto& r : t.rows) {
    EXPECT_EQ(r.h, r.k == 3 ? 1 : 0) << "k=" << r.k;
    EXPECT_TRUE(r.certified);
  }
  EXPECT_TRUE(gcx::euler_characteristic(t).consistent());
}

TEST(Cohomology, OddLoopFiveAndSix) {
  const auto t5 = gcx::cohomology_dims({Parity::Odd, Variant::Full, 5});
  EXPECT_EQ(t5.h(-3), 2);
  for (const auto& r : t5.rows) {
    if (r.k != -3) {
      EXPECT_EQ(r.h, 0);
    }
  }
  const auto t6 = gcx::cohomology_dims({Parity::Odd, Variant::Full, 6});
  EXPECT_EQ(t6.h(-3), 2);
  EXPECT_EQ(t6.h(-6), 1);
}

TEST(Cohomology, RowsSatisfyRankNullity) {
  const auto t = gcx::cohomology_dims({Parity::Odd, Variant::Triconnected, 5});
  for (const auto& r : t.rows) {
    EXPECT_GE(r.h, 0);
    EXPECT_EQ(r.h + static_cast<std::int64_t>(r.rank_in + r.rank_out), static_cast<std::int64_t>(r.dim));
  }
  EXPECT_EQ(t.rows.front().rank_in, 0u);
  EXPECT_EQ(t.rows.back().rank_out, 0u);
}

TEST(Cohomology, WiedemannZerosAreCertified) {
  gcx::CohomologyOptions opt;
  opt.method = gcx::RankMethod::Wiedemann;
  opt.seed = 17;
  const auto t = gcx::cohomology_dims({Parity::Even, Variant::Full, 5}, opt);
  const auto exact = gcx::cohomology_dims({Parity::Even, Variant::Full, 5});
  for (const auto& r : t.rows) {
    EXPECT_GE(r.h, exact.h(r.k));
    EXPECT_EQ(r.certified, r.h == 0);
  }
}

TEST(Cohomology, GeneratorCap) {
  gcx::CohomologyOptions opt;
  opt.generator_cap = 3;
  EXPECT_THROW(gcx::cohomology_dims({Parity::Odd, Variant::Full, 5}, opt), std::length_error);
}

TEST(Cohomology, JsonAndText) {
  const auto t = gcx::cohomology_dims({Parity::Even, Variant::Full, 4});
  const auto j = t.to_json();
  EXPECT_EQ(j["spec"], "even/full/g4");
  EXPECT_EQ(j["method"], "gauss");
  ASSERT_EQ(j["rows"].size(), t.rows.size());
  for (const auto* key : {"k", "dim", "rank_in", "rank_out", "h", "certified"})
    EXPECT_TRUE(j["rows"][0].contains(key));
  EXPECT_NE(t.to_text().find("rank"), std::string::npos);
}

TEST(Registry, LookupsAndFlags) {
  const auto& r = gcx::KnownValueRegistry::published();
  auto u = r.lookup(3, 11, -6);
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->value, 7);
  EXPECT_EQ(u->flag, gcx::EntryFlag::Uncertain);
  EXPECT_EQ(r.lookup(2, 3, 0)->value, 1);
  EXPECT_EQ(r.lookup(2, 13, 10)->flag, gcx::EntryFlag::UpperBound);
  EXPECT_EQ(r.lookup(3, 17, -17)->flag, gcx::EntryFlag::External);
  EXPECT_FALSE(r.lookup(2, 3, 7).has_value());
  for (const auto& e : r.entries()) EXPECT_FALSE(e.source.empty());
  EXPECT_TRUE(gcx::KnownValueRegistry::vanishes_by_degree(2, 5, -1));
  EXPECT_TRUE(gcx::KnownValueRegistry::vanishes_by_degree(3, 5, -2));
  EXPECT_FALSE(gcx::KnownValueRegistry::vanishes_by_degree(3, 5, -5));
}

TEST(Registry, ComparisonTreatsUncertainEntriesAsBounds) {
  gcx::CohomologyTable t;
  t.spec = {Parity::Odd, Variant::Full, 11};
  t.rows.push_back({-6, 10, 2, 2, 6, false});
  t.rows.push_back({-7, 10, 5, 5, 0, true});
  EXPECT_TRUE(gcx::compare_with_registry(t).all_match());
  t.rows[0].h = 8;
  EXPECT_FALSE(gcx::compare_with_registry(t).all_match());
}

TEST(Registry, SmallTablesMatch) {
  for (int g = 3; g <= 6; ++g)
    EXPECT_TRUE(gcx::compare_with_registry(gcx::cohomology_dims({Parity::Even, Variant::Full, g})).all_match());
  for (int g = 2; g <= 5; ++g)
    EXPECT_TRUE(gcx::compare_with_registry(gcx::cohomology_dims({Parity::Odd, Variant::Full, g})).all_match());
}
