#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace gcx {

/// How much a published value can be trusted.
enum class EntryFlag {
  Exact,       // computed and proven
  Uncertain,   // published value is an upper bound that may not be tight
  External,    // taken from later work, listed for reference only
  UpperBound,  // published as "<= value"
};

inline std::string_view to_string(EntryFlag f) {
  switch (f) {
    case EntryFlag::Exact: return "exact";
    case EntryFlag::Uncertain: return "uncertain";
    case EntryFlag::External: return "external";
    case EntryFlag::UpperBound: return "upper-bound";
  }
  return "?";
}

struct KnownValue {
  int n = 2;  // 2 for the even complex, 3 for the odd one
  int g = 0;
  int k = 0;
  int value = 0;
  EntryFlag flag = EntryFlag::Exact;
  std::string source;  // "even table" or "odd table"
  std::string note;
};

/// Read-only table of published dim H^k(GC_n^{g-loop}) values.
class KnownValueRegistry {
 public:
  static const KnownValueRegistry& published() {
    static const KnownValueRegistry registry = build();
    return registry;
  }

  std::optional<KnownValue> lookup(int n, int g, int k) const {
    auto it = entries_.find({n, g, k});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  /// Zero forced by the degree range of the complex: for n = 2 outside
  /// [0, g-3], for n = 3 outside [-g, -3].
  static bool vanishes_by_degree(int n, int g, int k) {
    return n == 2 ? (k < 0 || k > g - 3) : (k > -3 || k < -g);
  }

  std::vector<KnownValue> entries() const {
    std::vector<KnownValue> out;
    for (const auto& [key, v] : entries_) out.push_back(v);
    return out;
  }

  std::size_t size() const { return entries_.size(); }

 private:
  using Key = std::tuple<int, int, int>;

  void add(int n, int g, int k, int value, EntryFlag flag = EntryFlag::Exact, std::string note = {}) {
    entries_[{n, g, k}] = {n, g, k, value, flag, n == 2 ? "even table" : "odd table", std::move(note)};
  }

  void add_row(int n, int k, int g_first, std::initializer_list<int> values) {
    int g = g_first;
    for (int v : values) add(n, g++, k, v);
  }

  static KnownValueRegistry build() {
    KnownValueRegistry r;
    // Even complex. Row k = 0 is the weight-g part of grt_1.
    r.add_row(2, 0, 3, {1, 0, 1, 0, 1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 7, 8, 11, 13, 17, 21, 28, 34, 45,
                        56, 73, 92, 120});
    r.add_row(2, 1, 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    r.add_row(2, 2, 5, {0, 0, 0, 0, 0, 0, 0, 0, 0});
    r.add_row(2, 3, 6, {1, 0, 1, 1, 2, 2, 2, 4});
    r.add_row(2, 4, 7, {0, 0, 0, 0, 0});
    r.add_row(2, 5, 8, {0, 0, 0, 0});
    r.add_row(2, 6, 9, {0, 0, 1});
    r.add_row(2, 7, 10, {1, 0});
    r.add_row(2, 8, 11, {0});
    r.add_row(2, 9, 12, {0});
    r.add(2, 13, 10, 1, EntryFlag::UpperBound);
    r.add(2, 14, 11, 1, EntryFlag::UpperBound);

    // Odd complex.
    r.add_row(3, -3, 2, {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 9, 11, 13});
    r.add_row(3, -4, 4, {0, 0, 0, 0, 0, 0, 0, 0});
    r.add_row(3, -5, 5, {0, 0, 0, 0, 0, 0, 0});
    r.add_row(3, -6, 6, {1, 1, 2, 3, 5});
    r.add(3, 11, -6, 7, EntryFlag::Uncertain, "upper bound; 6 if not tight");
    r.add_row(3, -7, 7, {0, 0, 0, 0});
    r.add(3, 11, -7, 1, EntryFlag::Uncertain, "upper bound; 0 if not tight");
    r.add_row(3, -8, 8, {0, 0, 0, 0});
    r.add_row(3, -9, 9, {0, 0, 1});
    r.add_row(3, -10, 10, {0, 0});
    r.add_row(3, -11, 11, {0});
    for (int g = 12; g <= 16; ++g) r.add(3, g, -g, 0, EntryFlag::External);
    r.add(3, 17, -17, 0, EntryFlag::External,
          "printed with row label -16; the diagonal position gives k = -17");
    return r;
  }

  std::map<Key, KnownValue> entries_;
};

}  // namespace gcx
