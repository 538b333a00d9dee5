#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gcx/complex.hpp"
#include "gcx/linalg.hpp"
#include "gcx/parallel.hpp"
#include "gcx/registry.hpp"

namespace gcx {

struct CohomologyRow {
  int k = 0;
  std::size_t dim = 0;
  std::size_t rank_in = 0;   // rank of the contraction leaving this slice
  std::size_t rank_out = 0;  // rank of the contraction arriving from the slice above
  std::int64_t h = 0;
  bool certified = false;
};

struct CohomologyTable {
  ComplexSpec spec;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  RankMethod method = RankMethod::Gauss;
  std::vector<CohomologyRow> rows;  // ascending k

  const CohomologyRow* row(int k) const {
    for (const auto& r : rows)
      if (r.k == k) return &r;
    return nullptr;
  }

  /// dim H^k, zero for degrees without a slice.
  std::int64_t h(int k) const {
    const auto* r = row(k);
    return r ? r->h : 0;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["spec"] = to_string(spec);
    j["prime"] = prime;
    j["method"] = std::string(to_string(method));
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"k", r.k},
                           {"dim", r.dim},
                           {"rank_in", r.rank_in},
                           {"rank_out", r.rank_out},
                           {"h", r.h},
                           {"certified", r.certified}});
    return j;
  }

  /// Aligned columns k, dim, rank, h where rank is the rank of the map out of
  /// degree k.
  std::string to_text() const {
    std::ostringstream out;
    out << std::setw(5) << "k" << std::setw(12) << "dim" << std::setw(12) << "rank"
        << std::setw(8) << "h" << '\n';
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      out << std::setw(5) << it->k << std::setw(12) << it->dim << std::setw(12) << it->rank_in
          << std::setw(8) << it->h << (it->certified ? "" : "  (upper bound)") << '\n';
    return out.str();
  }
};

struct CohomologyOptions {
  std::uint64_t prime = PrimeField::kDefaultPrime;
  RankMethod method = RankMethod::Gauss;
  std::uint64_t seed = 0;
  /// Gauss ranks are repeated at this prime; equal ranks certify a row.
  std::optional<std::uint64_t> check_prime = 10007;
  std::size_t generator_cap = 5'000'000;
};

/// All slices of a complex with the differentials between consecutive ones.
struct ComplexData {
  std::vector<BasisSlice> slices;          // by vertex count, lowest first
  std::vector<IntSparseMatrix> contraction; // contraction[i]: slices[i+1] -> slices[i]
};

inline ComplexData build_complex(const ComplexSpec& spec,
                                 std::size_t generator_cap = CohomologyOptions{}.generator_cap) {
  ComplexData data;
  data.slices = enumerate_slices(spec);
  for (const auto& s : data.slices)
    if (s.size() > generator_cap)
      throw std::length_error("slice with " + std::to_string(s.size()) +
                              " generators exceeds the cap of " + std::to_string(generator_cap));
  for (std::size_t i = 0; i + 1 < data.slices.size(); ++i)
    data.contraction.push_back(differential_matrix(data.slices[i + 1], data.slices[i]));
  return data;
}

namespace detail {

inline std::vector<RankResult> ranks_of(const std::vector<IntSparseMatrix>& ms, std::uint64_t prime,
                                        RankMethod method, std::uint64_t seed) {
  const PrimeField field(prime);
  std::vector<RankResult> out(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) {
    out[i] = compute_rank(reduce_mod_p(ms[i], field), method, seed);
  });
  return out;
}

}  // namespace detail

inline CohomologyTable cohomology_from(const ComplexData& data, const CohomologyOptions& options) {
  if (data.slices.empty()) throw std::invalid_argument("complex has no slices");
  CohomologyTable table;
  table.spec = data.slices.front().spec();
  table.prime = options.prime;
  table.method = options.method;

  auto ranks = detail::ranks_of(data.contraction, options.prime, options.method, options.seed);
  std::vector<bool> exact(ranks.size(), options.method == RankMethod::Gauss);
  if (options.method == RankMethod::Gauss && options.check_prime && *options.check_prime != options.prime) {
    auto again = detail::ranks_of(data.contraction, *options.check_prime, RankMethod::Gauss, 0);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      exact[i] = ranks[i].rank == again[i].rank;
      // Both are at most the rational rank, so the larger one is closer.
      ranks[i].rank = std::max(ranks[i].rank, again[i].rank);
    }
  } else if (options.method == RankMethod::Gauss) {
    std::fill(exact.begin(), exact.end(), false);
  }

  const std::size_t n = data.slices.size();
  for (std::size_t i = 0; i < n; ++i) {
    CohomologyRow row;
    row.k = data.slices[i].degree();
    row.dim = data.slices[i].size();
    bool ok = true;
    if (i > 0) {
      row.rank_in = ranks[i - 1].rank;
      ok = ok && exact[i - 1];
    }
    if (i + 1 < n) {
      row.rank_out = ranks[i].rank;
      ok = ok && exact[i];
    }
    row.h = static_cast<std::int64_t>(row.dim) - static_cast<std::int64_t>(row.rank_in) -
            static_cast<std::int64_t>(row.rank_out);
    if (row.h < 0) throw std::logic_error("negative cohomology dimension at k=" + std::to_string(row.k));
    row.certified = ok || row.h == 0;
    table.rows.push_back(row);
  }
  return table;
}

inline CohomologyTable cohomology_dims(const ComplexSpec& spec, const CohomologyOptions& options = {}) {
  return cohomology_from(build_complex(spec, options.generator_cap), options);
}

struct EulerCharacteristic {
  std::int64_t chain_chi = 0;
  std::int64_t cohomology_chi = 0;
  bool consistent() const { return chain_chi == cohomology_chi; }
};

inline EulerCharacteristic euler_characteristic(const CohomologyTable& table) {
  EulerCharacteristic e;
  for (const auto& r : table.rows) {
    const std::int64_t s = (r.k % 2 == 0) ? 1 : -1;
    e.chain_chi += s * static_cast<std::int64_t>(r.dim);
    e.cohomology_chi += s * r.h;
  }
  return e;
}

struct RegistryMatch {
  int k = 0;
  std::int64_t computed = 0;
  int expected = 0;
  EntryFlag flag = EntryFlag::Exact;
  bool from_degree_bound = false;  // no table entry; zero forced by the degree range
  bool ok = false;
};

struct RegistryComparison {
  std::vector<RegistryMatch> matches;
  bool all_match() const {
    return std::all_of(matches.begin(), matches.end(), [](const RegistryMatch& m) { return m.ok; });
  }
};

/// Degree-by-degree comparison. Uncertain and "<=" entries are treated as
/// upper bounds; degrees without an entry are compared with zero only when
/// the degree range forces it.
inline RegistryComparison compare_with_registry(const CohomologyTable& table,
                                                const KnownValueRegistry& registry =
                                                    KnownValueRegistry::published()) {
  RegistryComparison cmp;
  const int n = complex_degree(table.spec.parity);
  const int g = table.spec.loops;
  for (const auto& r : table.rows) {
    RegistryMatch m;
    m.k = r.k;
    m.computed = r.h;
    if (auto known = registry.lookup(n, g, r.k)) {
      m.expected = known->value;
      m.flag = known->flag;
      m.ok = (known->flag == EntryFlag::Uncertain || known->flag == EntryFlag::UpperBound)
                 ? r.h <= known->value
                 : r.h == known->value;
    } else if (KnownValueRegistry::vanishes_by_degree(n, g, r.k)) {
      m.from_degree_bound = true;
      m.ok = r.h == 0;
    } else {
      continue;
    }
    cmp.matches.push_back(m);
  }
  return cmp;
}

}  // namespace gcx
