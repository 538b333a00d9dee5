#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "gcx/cache.hpp"
#include "gcx/io.hpp"

using gcx::ComplexSpec;
using gcx::Parity;
using gcx::Variant;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gcx-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(BasisFile, RoundTrip) {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const ComplexSpec spec{p, Variant::Full, 5};
    for (const auto& s : gcx::enumerate_slices(spec)) {
      std::stringstream buf;
      gcx::write_basis(buf, s);
      EXPECT_EQ(gcx::read_basis(buf), s);
    }
  }
}

TEST(BasisFile, HeaderLine) {
  std::stringstream buf;
  gcx::write_basis(buf, gcx::enumerate_basis({Parity::Even, Variant::Full, 3}, 4));
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header, "#gls parity=even variant=full loops=3 vertices=4 count=1");
}

TEST(BasisFile, RejectsBadInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return gcx::read_basis(in);
  };
  EXPECT_THROW(parse(""), gcx::FormatError);
  EXPECT_THROW(parse("#gls parity=even variant=full loops=3 vertices=4\n"), gcx::FormatError);
  EXPECT_THROW(parse("#gls parity=even variant=full loops=3 vertices=4 count=2\n4 6 0 1 0 2 0 3 1 2 1 3 2 3\n"),
               gcx::FormatError);
  EXPECT_THROW(parse("#gls parity=blue variant=full loops=3 vertices=4 count=0\n"), gcx::FormatError);
  EXPECT_THROW(parse("#gls parity=even variant=full loops=3 vertices=4 count=1\n4 1 0 9\n"), gcx::FormatError);
}

TEST(SmsFile, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    std::vector<gcx::Triplet> es;
    const std::uint32_t r = 1 + rng() % 20, c = 1 + rng() % 20;
    for (int i = 0; i < 30; ++i)
      es.push_back({static_cast<std::uint32_t>(rng() % r), static_cast<std::uint32_t>(rng() % c),
                    static_cast<std::int64_t>(rng() % 7) - 3});
    gcx::IntSparseMatrix m(r, c, es);
    std::stringstream buf;
    gcx::write_sms(buf, m);
    EXPECT_EQ(gcx::read_sms(buf), m);
  }
}

TEST(SmsFile, Format) {
  gcx::IntSparseMatrix m(2, 3, {{0, 2, -1}, {1, 0, 4}});
  std::stringstream buf;
  gcx::write_sms(buf, m);
  EXPECT_EQ(buf.str(), "2 3 M\n1 3 -1\n2 1 4\n0 0 0\n");
}

TEST(SmsFile, RejectsBadInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return gcx::read_sms(in);
  };
  EXPECT_THROW(parse(""), gcx::FormatError);
  EXPECT_THROW(parse("2 2 M\n1 1 1\n"), gcx::FormatError);
  EXPECT_THROW(parse("2 2 M\n3 1 1\n0 0 0\n"), gcx::FormatError);
  EXPECT_THROW(parse("2 2 M\n1 1 0\n0 0 0\n"), gcx::FormatError);
  EXPECT_THROW(parse("2 2 M\n1 x 1\n0 0 0\n"), gcx::FormatError);
  EXPECT_EQ(parse("3 3 M\n0 0 0\n").nnz(), 0u);
}

TEST(CacheKey, PathsAreDistinct) {
  std::set<std::string> seen;
  for (Parity p : {Parity::Even, Parity::Odd})
    for (Variant v : {Variant::Full, Variant::Triconnected})
      for (int g = 2; g <= 12; ++g)
        for (int n = 2; n <= 2 * g - 2; ++n) {
          const ComplexSpec s{p, v, g};
          EXPECT_TRUE(seen.insert(gcx::CacheKey::basis(s, n).relative_path().string()).second);
          EXPECT_TRUE(seen.insert(gcx::CacheKey::matrix(s, n).relative_path().string()).second);
          for (std::uint64_t prime : {3323ull, 10007ull})
            for (auto m : {gcx::RankMethod::Gauss, gcx::RankMethod::Wiedemann})
              EXPECT_TRUE(seen.insert(gcx::CacheKey::rank(s, n, prime, m).relative_path().string()).second);
        }
}

TEST(Cache, CachedComplexMatchesFreshComputation) {
  const auto dir = scratch_dir("coherence");
  const gcx::Cache cache(dir);
  const ComplexSpec spec{Parity::Odd, Variant::Full, 5};
  const auto fresh = gcx::build_complex(spec);
  const auto first = gcx::cached_complex(spec, cache);
  const auto second = gcx::cached_complex(spec, cache);
  ASSERT_EQ(first.slices.size(), fresh.slices.size());
  for (std::size_t i = 0; i < fresh.slices.size(); ++i) {
    EXPECT_EQ(first.slices[i], fresh.slices[i]);
    EXPECT_EQ(second.slices[i], fresh.slices[i]);
  }
  EXPECT_EQ(first.contraction, fresh.contraction);
  EXPECT_EQ(second.contraction, fresh.contraction);

  // Byte-identical files for the same key.
  const auto key = gcx::CacheKey::basis(spec, 6);
  std::stringstream expected;
  gcx::write_basis(expected, fresh.slices[4]);
  std::ifstream in(cache.path(key));
  std::stringstream stored;
  stored << in.rdbuf();
  EXPECT_EQ(stored.str(), expected.str());
  EXPECT_NE(cache.path(key).string().find(gcx::Cache::kFormatVersion), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cache, RankEntries) {
  const auto dir = scratch_dir("rank");
  const gcx::Cache cache(dir);
  const auto key = gcx::CacheKey::rank({Parity::Even, Variant::Full, 6}, 8, 3323, gcx::RankMethod::Gauss);
  EXPECT_FALSE(cache.load_rank(key).has_value());
  cache.store(key, std::size_t{42});
  EXPECT_EQ(cache.load_rank(key), 42u);
  std::filesystem::remove_all(dir);
}

TEST(Cache, FlagOverridesEnvironment) {
  ::setenv("GC_CACHE_DIR", "/tmp/from-env", 1);
  EXPECT_EQ(gcx::Cache::from(std::string("/tmp/from-flag"))->root(),
            std::filesystem::path("/tmp/from-flag") / gcx::Cache::kFormatVersion);
  EXPECT_EQ(gcx::Cache::from(std::nullopt)->root(),
            std::filesystem::path("/tmp/from-env") / gcx::Cache::kFormatVersion);
  ::unsetenv("GC_CACHE_DIR");
  EXPECT_FALSE(gcx::Cache::from(std::nullopt).has_value());
}
