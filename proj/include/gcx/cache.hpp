#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include "gcx/cohomology.hpp"
#include "gcx/io.hpp"

namespace gcx {

/// Identifies one cached artifact. A basis is named by its spec and vertex
/// count; a differential additionally by its degree pair; a rank also by the
/// prime and method.
struct CacheKey {
  enum class Kind { Basis, Matrix, Rank };

  Kind kind = Kind::Basis;
  ComplexSpec spec;
  int vertices = 0;
  std::uint64_t prime = 0;
  RankMethod method = RankMethod::Gauss;

  static CacheKey basis(const ComplexSpec& s, int v) { return {Kind::Basis, s, v}; }

  /// Differential from the slice with `source_vertices` vertices to the one below.
  static CacheKey matrix(const ComplexSpec& s, int source_vertices) {
    return {Kind::Matrix, s, source_vertices};
  }

  static CacheKey rank(const ComplexSpec& s, int source_vertices, std::uint64_t p, RankMethod m) {
    return {Kind::Rank, s, source_vertices, p, m};
  }

  /// Relative path; distinct keys give distinct paths.
  std::filesystem::path relative_path() const {
    std::filesystem::path dir = std::string(to_string(spec.parity)) + '-' +
                                std::string(to_string(spec.variant)) + "-g" +
                                std::to_string(spec.loops);
    const int k = cohomological_degree(spec.parity, spec.loops, vertices);
    auto deg = [](int d) { return d < 0 ? "m" + std::to_string(-d) : std::to_string(d); };
    switch (kind) {
      case Kind::Basis:
        return dir / ("basis-v" + std::to_string(vertices) + ".gls");
      case Kind::Matrix:
        return dir / ("d-k" + deg(k) + "-k" + deg(k - 1) + ".sms");
      case Kind::Rank:
        return dir / ("rank-k" + deg(k) + "-k" + deg(k - 1) + "-p" + std::to_string(prime) + '-' +
                      std::string(to_string(method)) + ".txt");
    }
    return dir;
  }
};

class Cache {
 public:
  static constexpr const char* kFormatVersion = "gcx-v1";

  explicit Cache(std::filesystem::path root) : root_(std::move(root) / kFormatVersion) {}

  /// `--cache` if given, else GC_CACHE_DIR, else no cache.
  static std::optional<Cache> from(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return Cache(*flag);
    if (const char* env = std::getenv("GC_CACHE_DIR"); env && *env) return Cache(env);
    return std::nullopt;
  }

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path(const CacheKey& key) const { return root_ / key.relative_path(); }
  bool contains(const CacheKey& key) const { return std::filesystem::exists(path(key)); }

  std::optional<BasisSlice> load_basis(const CacheKey& key) const {
    if (!contains(key)) return std::nullopt;
    return gcx::load_basis(path(key).string());
  }

  std::optional<IntSparseMatrix> load_matrix(const CacheKey& key) const {
    if (!contains(key)) return std::nullopt;
    return gcx::load_sms(path(key).string());
  }

  std::optional<std::size_t> load_rank(const CacheKey& key) const {
    if (!contains(key)) return std::nullopt;
    std::ifstream in(path(key));
    std::size_t r = 0;
    if (!(in >> r)) throw FormatError("malformed rank cache entry " + path(key).string());
    return r;
  }

  void store(const CacheKey& key, const BasisSlice& s) const {
    write_atomically(key, [&](std::ostream& out) { write_basis(out, s); });
  }
  void store(const CacheKey& key, const IntSparseMatrix& m) const {
    write_atomically(key, [&](std::ostream& out) { write_sms(out, m); });
  }
  void store(const CacheKey& key, std::size_t rank) const {
    write_atomically(key, [&](std::ostream& out) { out << rank << '\n'; });
  }

 private:
  template <class Fn>
  void write_atomically(const CacheKey& key, Fn write) const {
    const auto target = path(key);
    std::filesystem::create_directories(target.parent_path());
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
      write(out);
      if (!out) throw std::runtime_error("failed writing cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }

  std::filesystem::path root_;
};

/// build_complex with bases and differentials read from, or added to, the cache.
inline ComplexData cached_complex(const ComplexSpec& spec, const Cache& cache,
                                  std::size_t generator_cap = CohomologyOptions{}.generator_cap) {
  const int lo = min_vertices(spec.loops), hi = max_vertices(spec.loops);
  ComplexData data;
  bool have_all = true;
  for (int v = lo; v <= hi && have_all; ++v) {
    auto s = cache.load_basis(CacheKey::basis(spec, v));
    if (!s) have_all = false;
    else data.slices.push_back(std::move(*s));
  }
  if (!have_all) {
    data.slices = enumerate_slices(spec);
    for (const auto& s : data.slices) cache.store(CacheKey::basis(spec, s.num_vertices()), s);
  }
  for (const auto& s : data.slices)
    if (s.size() > generator_cap)
      throw std::length_error("slice with " + std::to_string(s.size()) +
                              " generators exceeds the cap of " + std::to_string(generator_cap));
  for (std::size_t i = 0; i + 1 < data.slices.size(); ++i) {
    const auto key = CacheKey::matrix(spec, data.slices[i + 1].num_vertices());
    if (auto m = cache.load_matrix(key)) {
      data.contraction.push_back(std::move(*m));
    } else {
      data.contraction.push_back(differential_matrix(data.slices[i + 1], data.slices[i]));
      cache.store(key, data.contraction.back());
    }
  }
  return data;
}

}  // namespace gcx
