#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcx/complex.hpp"
#include "gcx/sparse_matrix.hpp"

namespace gcx {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Basis files: `#gls parity=.. variant=.. loops=.. vertices=.. count=..`
// followed by one graph per line.

inline void write_basis(std::ostream& out, const BasisSlice& slice) {
  const auto& s = slice.spec();
  out << "#gls parity=" << to_string(s.parity) << " variant=" << to_string(s.variant)
      << " loops=" << s.loops << " vertices=" << slice.num_vertices() << " count=" << slice.size()
      << '\n';
  for (const auto& g : slice.generators()) out << g.to_string() << '\n';
}

namespace detail {

inline long long parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw FormatError(std::string("malformed ") + what + " '" + s + "'");
  }
  if (pos != s.size()) throw FormatError(std::string("malformed ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

inline BasisSlice read_basis(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty basis file");
  std::istringstream header(line);
  std::string tag;
  header >> tag;
  if (tag != "#gls") throw FormatError("basis file must start with #gls");
  std::map<std::string, std::string> fields;
  for (std::string kv; header >> kv;) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw FormatError("malformed header field '" + kv + "'");
    fields[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const char* key : {"parity", "variant", "loops", "vertices", "count"})
    if (!fields.count(key)) throw FormatError(std::string("header lacks ") + key);

  ComplexSpec spec;
  try {
    spec.parity = parse_parity(fields["parity"]);
    spec.variant = parse_variant(fields["variant"]);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  spec.loops = static_cast<int>(detail::parse_int(fields["loops"], "loop order"));
  const auto vertices = detail::parse_int(fields["vertices"], "vertex count");
  const auto count = detail::parse_int(fields["count"], "count");
  if (count < 0 || vertices < 0 || vertices > Multigraph::kMaxVertices)
    throw FormatError("header values out of range");

  std::vector<Multigraph> gens;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      gens.push_back(Multigraph::parse(line));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string(e.what()) + ": '" + line + "'");
    }
  }
  if (static_cast<long long>(gens.size()) != count)
    throw FormatError("header announces " + std::to_string(count) + " graphs, file has " +
                      std::to_string(gens.size()));
  try {
    return BasisSlice(spec, static_cast<int>(vertices), std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

// SMS matrices: `R C M`, then 1-indexed `i j v` lines, then `0 0 0`. The
// third header field is the matrix type letter used by existing tools; we
// always write M.

inline void write_sms(std::ostream& out, const IntSparseMatrix& m) {
  out << m.nrows() << ' ' << m.ncols() << " M\n";
  for (const auto& e : m.entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  out << "0 0 0\n";
}

inline IntSparseMatrix read_sms(std::istream& in) {
  std::string r, c, type;
  if (!(in >> r >> c >> type)) throw FormatError("missing SMS header");
  const auto nrows = detail::parse_int(r, "row count");
  const auto ncols = detail::parse_int(c, "column count");
  if (nrows < 0 || ncols < 0 || nrows > UINT32_MAX || ncols > UINT32_MAX)
    throw FormatError("SMS dimensions out of range");
  std::vector<Triplet> entries;
  for (;;) {
    std::string a, b, v;
    if (!(in >> a >> b >> v)) throw FormatError("SMS data ends without 0 0 0 terminator");
    const auto i = detail::parse_int(a, "row index");
    const auto j = detail::parse_int(b, "column index");
    const auto x = detail::parse_int(v, "entry value");
    if (i == 0 && j == 0 && x == 0) break;
    if (i < 1 || j < 1 || i > nrows || j > ncols)
      throw FormatError("SMS entry (" + a + ", " + b + ") out of range");
    if (x == 0) throw FormatError("SMS entry (" + a + ", " + b + ") is zero");
    entries.push_back({static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1), x});
  }
  return IntSparseMatrix(static_cast<std::size_t>(nrows), static_cast<std::size_t>(ncols),
                         std::move(entries));
}

template <class T, class Writer>
void save_file(const std::string& path, const T& value, Writer write) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out, value);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

inline BasisSlice load_basis(const std::string& path) {
  auto in = open_input(path);
  return read_basis(in);
}

inline IntSparseMatrix load_sms(const std::string& path) {
  auto in = open_input(path);
  return read_sms(in);
}

inline void save_basis(const std::string& path, const BasisSlice& s) { save_file(path, s, write_basis); }
inline void save_sms(const std::string& path, const IntSparseMatrix& m) { save_file(path, m, write_sms); }

}  // namespace gcx
