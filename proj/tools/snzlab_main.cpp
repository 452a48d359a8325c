// snzlab: exact permutation-invariant charges on the clopen algebra of
// Cantor space - charge evaluation, strict-nonzeroness certificates, the
// exact lemma battery, and the non-extendability demos.
//
// Exit codes: 0 verified/ok, 1 counterexample or witness (when that is the
// query's answer), 2 error, 3 indeterminate (budget exhausted).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snzlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitWitness = 1;
constexpr int kExitError = 2;
constexpr int kExitIndeterminate = 3;

// Owns a string allocated by the library.
struct LibString {
  char* ptr = nullptr;
  ~LibString() { snzlab_string_free(ptr); }
  const char* get() const { return ptr == nullptr ? "" : ptr; }
};

struct PseqHandle {
  snzlab_pseq* ptr = nullptr;
  ~PseqHandle() { snzlab_pseq_free(ptr); }
};

struct ClopenHandle {
  snzlab_clopen* ptr = nullptr;
  ~ClopenHandle() { snzlab_clopen_free(ptr); }
};

int report_error(snzlab_status) {
  std::cerr << "error: " << snzlab_last_error() << "\n";
  return kExitError;
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitError;
    }
    out << text;
  }
  return kExitOk;
}

// --p accepts a JSON file path or an inline list like "(1,-1,2)" / "1,-1,2".
int load_pseq(const std::string& arg, PseqHandle& out) {
  if (file_exists(arg)) {
    const std::optional<std::string> text = read_file(arg);
    if (!text.has_value()) {
      std::cerr << "error: cannot read " << arg << "\n";
      return kExitError;
    }
    const snzlab_status status = snzlab_pseq_from_json(text->c_str(), &out.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    return kExitOk;
  }

  std::string cleaned = arg;
  for (char& c : cleaned) {
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') c = ' ';
  }
  std::istringstream split(cleaned);
  std::vector<std::string> terms;
  for (std::string term; split >> term;) terms.push_back(term);
  if (terms.empty()) {
    std::cerr << "error: --p needs a JSON file or an inline list like (1,-1,2)\n";
    return kExitError;
  }
  std::vector<const char*> raw;
  raw.reserve(terms.size());
  for (const std::string& t : terms) raw.push_back(t.c_str());
  const snzlab_status status =
      snzlab_pseq_from_terms(raw.data(), raw.size(), &out.ptr);
  if (status != SNZLAB_OK) return report_error(status);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "snzlab - exact integer-valued charges on the clopen algebra of "
      "Cantor space, with strict-nonzeroness certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "snzlab 1.0.0");

  // measure
  auto* measure = app.add_subcommand(
      "measure", "Evaluate the charge of a clopen-set expression under p");
  std::string measure_expr;
  std::string measure_p;
  bool measure_json = false;
  measure->add_option("expr", measure_expr, "Expression, e.g. \"H({1},{2}) | FULL\"")
      ->required();
  measure->add_option("--p", measure_p, "p-sequence JSON file or inline list")
      ->required();
  measure->add_flag("--json", measure_json, "Emit a JSON document instead of the bare value");

  // verify-snz
  auto* verify = app.add_subcommand(
      "verify-snz", "Search every level t <= t-max for a vanishing clopen charge");
  std::string verify_p;
  std::size_t verify_tmax = 0;
  std::string verify_strategy = "exhaustive";
  unsigned verify_jobs = 1;
  std::uint64_t verify_budget = 0;
  bool verify_deterministic = false;
  std::string verify_out;
  verify->add_option("--p", verify_p, "p-sequence JSON file or inline list")
      ->required();
  verify->add_option("--t-max", verify_tmax, "Largest support size to verify")
      ->required();
  verify->add_option("--strategy", verify_strategy,
                     "exhaustive | meet_in_the_middle")
      ->capture_default_str();
  verify->add_option("--jobs", verify_jobs, "Worker threads for the scan")
      ->capture_default_str();
  verify->add_option("--budget-ms", verify_budget,
                     "Per-level wall budget in ms (0 = unlimited)");
  verify->add_flag("--deterministic", verify_deterministic,
                   "Canonical output: lex-least counterexample, ms field zeroed");
  verify->add_option("-o,--out", verify_out, "Also write the certificate here");

  // gen-pseq
  auto* gen = app.add_subcommand(
      "gen-pseq", "Grow the greedy-minimal sequence certified level by level");
  bool gen_greedy = false;
  std::size_t gen_horizon = 0;
  std::string gen_strategy = "meet_in_the_middle";
  std::uint64_t gen_budget = 0;
  std::uint64_t gen_candidate_limit = 1000000;
  std::string gen_out;
  gen->add_flag("--greedy", gen_greedy, "Greedy-minimal growth (the only mode)")
      ->required();
  gen->add_option("--t-horizon", gen_horizon, "Certify levels 0..horizon")
      ->required();
  gen->add_option("--strategy", gen_strategy, "Verifier strategy while growing")
      ->capture_default_str();
  gen->add_option("--budget-ms", gen_budget, "Per-verification budget in ms");
  gen->add_option("--candidate-limit", gen_candidate_limit,
                  "Abort a level after scanning candidates up to this magnitude")
      ->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Also write the sequence here");

  // check-growth
  auto* growth = app.add_subcommand(
      "check-growth", "Check |p_k| > g(k) * sum of earlier |p_i| in log2 space");
  std::string growth_p;
  std::string growth_g;
  std::size_t growth_kmax = std::size_t(-1);
  growth->add_option("--p", growth_p, "p-sequence JSON file or inline list")
      ->required();
  growth->add_option("--g", growth_g,
                     "Growth spec: 2^k, 2^(k^10), 2^((100*k)^10), default")
      ->required();
  growth->add_option("--k-max", growth_kmax, "Check k = 0..k-max (default: all)");

  // check-lemmas
  auto* lemmas = app.add_subcommand(
      "check-lemmas", "Exact dual-basis / sandwich / quadratic-form battery");
  std::size_t lemmas_t = 0;
  std::size_t lemmas_s = 0;
  bool lemmas_has_s = false;
  lemmas->add_option("--t", lemmas_t, "Level for the matrix checks")->required();
  auto* s_opt = lemmas->add_option("--s", lemmas_s,
                                   "Degree for the quadratic-form checks");
  std::string lemmas_out;
  lemmas->add_option("-o,--out", lemmas_out, "Also write the report here");

  // demo-chain
  auto* chain = app.add_subcommand(
      "demo-chain", "Chain A_r = {i <= n : q_i < r} over the rational enumeration");
  std::uint64_t chain_n = 24;
  std::string chain_r = "1/3";
  std::string chain_r2 = "1/2";
  chain->add_option("--n", chain_n, "Truncation length")->capture_default_str();
  chain->add_option("--r", chain_r, "First threshold (decimal or num/den)")
      ->capture_default_str();
  chain->add_option("--r2", chain_r2, "Second threshold")->capture_default_str();

  // demo-evens
  auto* evens = app.add_subcommand(
      "demo-evens", "Forced zero-charge witness once mu(evens) is prescribed");
  std::string evens_e;
  evens->add_option("--e", evens_e, "Assumed integer charge of the evens")
      ->required();

  // demo-obstruction
  auto* obstruction = app.add_subcommand(
      "demo-obstruction", "Pigeonhole obstruction for values prescribed on a chain");
  std::string obstruction_a;
  std::vector<std::string> obstruction_values;
  obstruction->add_option("--a", obstruction_a, "Nonzero modulus a")->required();
  obstruction
      ->add_option("--values", obstruction_values,
                   "|a|+1 distinct integers prescribed on the chain")
      ->required()
      ->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForVersion& version) {
    return app.exit(version);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitError;
  }

  if (app.got_subcommand(measure)) {
    PseqHandle p;
    if (int rc = load_pseq(measure_p, p)) return rc;
    ClopenHandle set;
    snzlab_status status = snzlab_clopen_parse(measure_expr.c_str(), &set.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    LibString value;
    status = snzlab_charge(set.ptr, p.ptr, &value.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    if (measure_json) {
      LibString canonical;
      LibString set_json;
      if ((status = snzlab_clopen_print(set.ptr, &canonical.ptr)) != SNZLAB_OK ||
          (status = snzlab_clopen_to_json(set.ptr, &set_json.ptr)) != SNZLAB_OK) {
        return report_error(status);
      }
      nlohmann::ordered_json doc;
      doc["schema"] = "snzlab/1";
      doc["canonical"] = canonical.get();
      doc["charge"] = value.get();
      doc["set"] = nlohmann::ordered_json::parse(set_json.get());
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << value.get() << "\n";
    }
    return kExitOk;
  }

  if (app.got_subcommand(verify)) {
    PseqHandle p;
    if (int rc = load_pseq(verify_p, p)) return rc;
    snzlab_search_options options{};
    options.strategy = verify_strategy.c_str();
    options.jobs = verify_jobs;
    options.budget_ms = verify_budget;
    options.deterministic = verify_deterministic ? 1 : 0;
    int verdict = SNZLAB_VERDICT_INDETERMINATE;
    LibString cert;
    const snzlab_status status =
        snzlab_verify_range(p.ptr, verify_tmax, &options, &verdict, &cert.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    if (int rc = emit(cert.get(), verify_out)) return rc;
    return verdict;  // 0 ok, 1 counterexample, 3 indeterminate
  }

  if (app.got_subcommand(gen)) {
    snzlab_search_options options{};
    options.strategy = gen_strategy.c_str();
    options.jobs = 1;
    options.budget_ms = gen_budget;
    options.deterministic = 1;
    int complete = 0;
    LibString doc;
    const snzlab_status status = snzlab_greedy_sequence(
        gen_horizon, &options, gen_candidate_limit, &complete, &doc.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    if (int rc = emit(doc.get(), gen_out)) return rc;
    return complete != 0 ? kExitOk : kExitIndeterminate;
  }

  if (app.got_subcommand(growth)) {
    PseqHandle p;
    if (int rc = load_pseq(growth_p, p)) return rc;
    int all_ok = 0;
    LibString report;
    const snzlab_status status = snzlab_check_growth(
        p.ptr, growth_g.c_str(), growth_kmax, &all_ok, &report.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    std::cout << report.get();
    return all_ok != 0 ? kExitOk : kExitWitness;
  }

  if (app.got_subcommand(lemmas)) {
    lemmas_has_s = s_opt->count() > 0;
    int all_ok = 0;
    LibString report;
    const snzlab_status status = snzlab_check_lemmas(
        lemmas_t, lemmas_has_s ? 1 : 0, lemmas_s, &all_ok, &report.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    if (int rc = emit(report.get(), lemmas_out)) return rc;
    return all_ok != 0 ? kExitOk : kExitWitness;
  }

  if (app.got_subcommand(chain)) {
    LibString doc;
    const snzlab_status status =
        snzlab_demo_chain(chain_n, chain_r.c_str(), chain_r2.c_str(), &doc.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    std::cout << doc.get();
    return kExitOk;
  }

  if (app.got_subcommand(evens)) {
    LibString doc;
    const snzlab_status status = snzlab_demo_evens(evens_e.c_str(), &doc.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    std::cout << doc.get();
    return kExitWitness;  // the witness is the answer
  }

  if (app.got_subcommand(obstruction)) {
    std::vector<const char*> raw;
    raw.reserve(obstruction_values.size());
    for (const std::string& v : obstruction_values) raw.push_back(v.c_str());
    LibString doc;
    const snzlab_status status = snzlab_demo_obstruction(
        obstruction_a.c_str(), raw.data(), raw.size(), &doc.ptr);
    if (status != SNZLAB_OK) return report_error(status);
    std::cout << doc.get();
    return kExitWitness;
  }

  return kExitError;
}
