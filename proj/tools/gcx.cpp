#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcx/cache.hpp"
#include "gcx/checks.hpp"
#include "gcx/cohomology.hpp"
#include "gcx/io.hpp"
#include "gcx/kneissler.hpp"
#include "gcx/linalg.hpp"
#include "gcx/parallel.hpp"

namespace {

struct SpecFlags {
  std::string parity = "even";
  std::string variant = "full";
  int loops = 3;

  void attach(CLI::App* cmd, bool with_variant = true) {
    cmd->add_option("--parity", parity, "even or odd")->required()->check(CLI::IsMember({"even", "odd"}));
    if (with_variant)
      cmd->add_option("--variant", variant, "full or tri")->check(CLI::IsMember({"full", "tri"}));
    cmd->add_option("--loops", loops, "loop order g")->required()->check(CLI::Range(2, 30));
  }

  gcx::ComplexSpec spec() const {
    return {gcx::parse_parity(parity), gcx::parse_variant(variant), loops};
  }
};

std::uint64_t fresh_seed() { return std::random_device{}() | (std::uint64_t{std::random_device{}()} << 32); }

int fail(const std::string& command, const std::string& message, int code = 3) {
  std::cerr << nlohmann::json{{"command", command}, {"error", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kontsevich graph complex toolkit"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // gen
  auto* gen = app.add_subcommand("gen", "enumerate the basis of one slice");
  SpecFlags gen_spec;
  int gen_vertices = 0;
  std::string gen_out;
  std::optional<std::string> gen_cache;
  gen_spec.attach(gen);
  gen->add_option("--vertices", gen_vertices, "vertex count V")->required();
  gen->add_option("--out", gen_out, "basis file to write");
  gen->add_option("--cache", gen_cache, "cache directory");

  // diff
  auto* diff = app.add_subcommand("diff", "write the contraction differential out of one slice");
  SpecFlags diff_spec;
  int diff_vertices = 0;
  std::string diff_out;
  std::optional<std::string> diff_cache;
  diff_spec.attach(diff);
  diff->add_option("--vertices", diff_vertices, "vertex count of the source slice")->required();
  diff->add_option("--out", diff_out, "SMS file to write")->required();
  diff->add_option("--cache", diff_cache, "cache directory");

  // rank
  auto* rank = app.add_subcommand("rank", "rank of an SMS matrix over F_p");
  std::string rank_matrix, rank_method = "gauss";
  std::uint64_t rank_prime = gcx::PrimeField::kDefaultPrime;
  std::size_t rank_block = 1;
  std::optional<std::uint64_t> rank_seed;
  rank->add_option("--matrix", rank_matrix, "SMS file")->required();
  rank->add_option("--prime", rank_prime, "odd prime below 2^61");
  rank->add_option("--method", rank_method)->check(CLI::IsMember({"gauss", "wiedemann"}));
  rank->add_option("--block", rank_block, "Wiedemann blocking factor")->check(CLI::PositiveNumber);
  rank->add_option("--seed", rank_seed, "random seed (generated and printed when absent)");

  // cohomology
  auto* coh = app.add_subcommand("cohomology", "cohomology dimensions of a complex");
  SpecFlags coh_spec;
  std::uint64_t coh_prime = gcx::PrimeField::kDefaultPrime;
  std::string coh_method = "gauss", coh_format = "json";
  std::optional<std::uint64_t> coh_seed;
  std::optional<std::string> coh_cache;
  coh_spec.attach(coh);
  coh->add_option("--prime", coh_prime);
  coh->add_option("--method", coh_method)->check(CLI::IsMember({"gauss", "wiedemann"}));
  coh->add_option("--seed", coh_seed);
  coh->add_option("--cache", coh_cache, "cache directory");
  coh->add_option("--format", coh_format)->check(CLI::IsMember({"json", "text"}));

  // kneissler
  auto* kn = app.add_subcommand("kneissler", "top-degree upper bound from barrel graphs");
  SpecFlags kn_spec;
  std::uint64_t kn_prime = gcx::PrimeField::kDefaultPrime;
  std::string kn_method = "gauss";
  std::optional<std::uint64_t> kn_seed;
  kn_spec.attach(kn, false);
  kn->add_option("--prime", kn_prime);
  kn->add_option("--method", kn_method)->check(CLI::IsMember({"gauss", "wiedemann"}));
  kn->add_option("--seed", kn_seed);

  // check
  auto* chk = app.add_subcommand("check", "run a self-check suite");
  std::string chk_suite = "all";
  chk->add_option("--suite", chk_suite)
      ->check(CLI::IsMember({"d2", "tables", "kneissler", "linalg", "canon", "all"}));

  CLI11_PARSE(app, argc, argv);
  gcx::set_thread_count(threads);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*gen) {
      const auto spec = gen_spec.spec();
      std::optional<gcx::BasisSlice> slice;
      const auto cache = gcx::Cache::from(gen_cache);
      const auto key = gcx::CacheKey::basis(spec, gen_vertices);
      if (cache) slice = cache->load_basis(key);
      if (!slice) {
        slice = gcx::enumerate_basis(spec, gen_vertices);
        if (cache) cache->store(key, *slice);
      }
      if (!gen_out.empty()) gcx::save_basis(gen_out, *slice);
      std::cout << "count=" << slice->size() << '\n';
      return 0;
    }

    if (*diff) {
      const auto spec = diff_spec.spec();
      const auto cache = gcx::Cache::from(diff_cache);
      gcx::IntSparseMatrix m;
      const int lo = gcx::min_vertices(spec.loops), hi = gcx::max_vertices(spec.loops);
      if (diff_vertices <= lo || diff_vertices > hi)
        return fail(command, "no differential leaves the slice with " + std::to_string(diff_vertices) +
                                 " vertices (valid: " + std::to_string(lo + 1) + ".." +
                                 std::to_string(hi) + ")");
      if (cache) {
        m = gcx::cached_complex(spec, *cache).contraction[diff_vertices - lo - 1];
      } else {
        const auto slices = gcx::enumerate_slices(spec);
        m = gcx::differential_matrix(slices[diff_vertices - lo], slices[diff_vertices - lo - 1]);
      }
      gcx::save_sms(diff_out, m);
      std::cout << "rows=" << m.nrows() << " cols=" << m.ncols() << " nnz=" << m.nnz() << '\n';
      return 0;
    }

    if (*rank) {
      const gcx::PrimeField field(rank_prime);
      const auto m = gcx::reduce_mod_p(gcx::load_sms(rank_matrix), field);
      gcx::RankResult r;
      if (rank_method == "gauss") {
        r = gcx::gauss_rank(m);
      } else {
        gcx::WiedemannOptions opt;
        opt.seed = rank_seed.value_or(fresh_seed());
        opt.blocking = rank_block;
        r = gcx::wiedemann_rank(m, opt);
      }
      std::cout << r.to_string() << '\n';
      return 0;
    }

    if (*coh) {
      gcx::CohomologyOptions opt;
      opt.prime = coh_prime;
      opt.method = gcx::parse_rank_method(coh_method);
      opt.seed = opt.method == gcx::RankMethod::Wiedemann ? coh_seed.value_or(fresh_seed()) : 0;
      const auto spec = coh_spec.spec();
      const auto cache = gcx::Cache::from(coh_cache);
      const auto data = cache ? gcx::cached_complex(spec, *cache, opt.generator_cap)
                              : gcx::build_complex(spec, opt.generator_cap);
      const auto table = gcx::cohomology_from(data, opt);
      if (coh_format == "text") {
        std::cout << "# " << gcx::to_string(spec) << " prime=" << opt.prime
                  << " method=" << gcx::to_string(opt.method) << " seed=" << opt.seed << '\n'
                  << table.to_text();
      } else {
        auto j = table.to_json();
        j["seed"] = opt.seed;
        std::cout << j.dump(2) << '\n';
      }
      return 0;
    }

    if (*kn) {
      const auto p = gcx::parse_parity(kn_spec.parity);
      if (!gcx::kneissler_supported(kn_spec.loops, p))
        return fail(command, "barrel reduction not supported for " + kn_spec.parity + " parity at g=" +
                                 std::to_string(kn_spec.loops));
      const auto method = gcx::parse_rank_method(kn_method);
      const std::uint64_t seed = method == gcx::RankMethod::Wiedemann ? kn_seed.value_or(fresh_seed()) : 0;
      std::cout << gcx::upper_bound(kn_spec.loops, p, kn_prime, method, seed).to_json().dump() << '\n';
      return 0;
    }

    if (*chk) {
      gcx::checks::Context ctx;
      bool all = true;
      for (int id : gcx::checks::suite_criteria(chk_suite)) {
        const auto r = gcx::checks::run_criterion(id, ctx);
        std::cout << (r.passed() ? "PASS" : "FAIL") << ' ' << id << ": " << r.title << '\n';
        for (const auto& l : r.lines)
          std::cout << "    " << (l.ok ? "ok  " : "FAIL") << ' ' << l.label << "  " << l.detail << '\n';
        all = all && r.passed();
      }
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    return fail(command, e.what());
  }
  return 0;
}
