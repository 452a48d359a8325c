#include "snzlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "snzlab/charge.hpp"
#include "snzlab/clopen.hpp"
#include "snzlab/clopen_lang.hpp"
#include "snzlab/errors.hpp"
#include "snzlab/extension.hpp"
#include "snzlab/json_io.hpp"
#include "snzlab/lemma.hpp"
#include "snzlab/numeric.hpp"
#include "snzlab/snz.hpp"

struct snzlab_pseq {
  snzlab::PSequence impl;
};

struct snzlab_clopen {
  snzlab::ClopenSet impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

// Runs the body, translating exceptions into statuses + last-error text.
template <class Fn>
snzlab_status guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const snzlab::ParseError& err) {
    g_last_error = err.what();
    return SNZLAB_ERR_PARSE;
  } catch (const snzlab::InvalidInput& err) {
    g_last_error = err.what();
    return SNZLAB_ERR_INVALID;
  } catch (const nlohmann::json::exception& err) {
    g_last_error = err.what();
    return SNZLAB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SNZLAB_ERR_NOMEM;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return SNZLAB_ERR_INTERNAL;
  }
}

snzlab_status require(bool condition, const char* message) {
  if (condition) return SNZLAB_OK;
  g_last_error = message;
  return SNZLAB_ERR_INVALID;
}

snzlab::SearchOptions to_search_options(const snzlab_search_options* options) {
  snzlab::SearchOptions sopt;
  if (options == nullptr) return sopt;
  if (options->strategy != nullptr) {
    sopt.strategy = snzlab::strategy_from_string(options->strategy);
  }
  if (options->jobs > 0) sopt.jobs = options->jobs;
  sopt.budget_ms = options->budget_ms;
  sopt.deterministic = options->deterministic != 0;
  return sopt;
}

}  // namespace

extern "C" {

const char* snzlab_last_error(void) { return g_last_error.c_str(); }

void snzlab_string_free(char* text) { std::free(text); }

/* --- p-sequences --------------------------------------------------------- */

snzlab_status snzlab_pseq_from_json(const char* json_text, snzlab_pseq** out) {
  if (snzlab_status bad = require(json_text && out, "null argument")) return bad;
  return guarded([&]() {
    const auto doc = snzlab::io::json::parse(json_text);
    *out = new snzlab_pseq{snzlab::io::pseq_from_json(doc)};
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_pseq_from_terms(const char* const* decimal_terms,
                                     size_t count, snzlab_pseq** out) {
  if (snzlab_status bad = require(decimal_terms && out, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    std::vector<snzlab::BigInt> terms;
    terms.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      terms.push_back(snzlab::bigint_from_decimal(decimal_terms[i]));
    }
    *out = new snzlab_pseq{snzlab::PSequence(std::move(terms))};
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_pseq_to_json(const snzlab_pseq* p, char** out_json) {
  if (snzlab_status bad = require(p && out_json, "null argument")) return bad;
  return guarded([&]() {
    *out_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::pseq_to_json(p->impl)));
    return SNZLAB_OK;
  });
}

size_t snzlab_pseq_size(const snzlab_pseq* p) {
  return p == nullptr ? 0 : p->impl.size();
}

void snzlab_pseq_free(snzlab_pseq* p) { delete p; }

/* --- clopen sets and charges --------------------------------------------- */

snzlab_status snzlab_clopen_parse(const char* expression, snzlab_clopen** out) {
  if (snzlab_status bad = require(expression && out, "null argument")) return bad;
  return guarded([&]() {
    *out = new snzlab_clopen{snzlab::eval_clopen_text(expression)};
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_clopen_print(const snzlab_clopen* set, char** out_text) {
  if (snzlab_status bad = require(set && out_text, "null argument")) return bad;
  return guarded([&]() {
    *out_text = dup_string(snzlab::print_clopen(set->impl));
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_clopen_to_json(const snzlab_clopen* set, char** out_json) {
  if (snzlab_status bad = require(set && out_json, "null argument")) return bad;
  return guarded([&]() {
    *out_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::clopen_to_json(set->impl)));
    return SNZLAB_OK;
  });
}

void snzlab_clopen_free(snzlab_clopen* set) { delete set; }

snzlab_status snzlab_charge(const snzlab_clopen* set, const snzlab_pseq* p,
                            char** out_decimal) {
  if (snzlab_status bad = require(set && p && out_decimal, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    *out_decimal =
        dup_string(snzlab::to_decimal(snzlab::charge_of(set->impl, p->impl)));
    return SNZLAB_OK;
  });
}

/* --- verification --------------------------------------------------------- */

snzlab_status snzlab_verify_range(const snzlab_pseq* p, size_t t_max,
                                  const snzlab_search_options* options,
                                  int* out_verdict,
                                  char** out_certificate_json) {
  if (snzlab_status bad =
          require(p && out_verdict && out_certificate_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const snzlab::SearchOptions sopt = to_search_options(options);
    const snzlab::SnzCertificate cert =
        snzlab::verify_range(p->impl, t_max, sopt);
    switch (cert.levels.back().verdict) {
      case snzlab::Verdict::ok:
        *out_verdict = SNZLAB_VERDICT_OK;
        break;
      case snzlab::Verdict::counterexample:
        *out_verdict = SNZLAB_VERDICT_COUNTEREXAMPLE;
        break;
      case snzlab::Verdict::indeterminate:
        *out_verdict = SNZLAB_VERDICT_INDETERMINATE;
        break;
    }
    *out_certificate_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::certificate_to_json(cert)));
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_validate_certificate(const char* certificate_json,
                                          const snzlab_pseq* p, int* out_valid,
                                          char** out_reason) {
  if (snzlab_status bad =
          require(certificate_json && p && out_valid, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const auto doc = snzlab::io::json::parse(certificate_json);
    const snzlab::SnzCertificate cert = snzlab::io::certificate_from_json(doc);
    std::string reason;
    *out_valid = snzlab::validate_certificate(cert, p->impl, &reason) ? 1 : 0;
    if (out_reason != nullptr) {
      *out_reason = *out_valid ? nullptr : dup_string(reason);
    }
    return SNZLAB_OK;
  });
}

/* --- greedy growth --------------------------------------------------------- */

snzlab_status snzlab_greedy_sequence(size_t horizon,
                                     const snzlab_search_options* options,
                                     uint64_t candidate_limit, int* out_complete,
                                     char** out_json) {
  if (snzlab_status bad = require(out_complete && out_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const snzlab::SearchOptions sopt = to_search_options(options);
    snzlab::GreedyOptions gopt;
    gopt.strategy = sopt.strategy;
    gopt.jobs = sopt.jobs;
    gopt.budget_ms = sopt.budget_ms;
    if (candidate_limit > 0) gopt.candidate_limit = candidate_limit;
    const snzlab::GreedyResult result = snzlab::greedy_sequence(horizon, gopt);
    *out_complete = result.sequence.has_value() ? 1 : 0;
    snzlab::io::json doc;
    if (result.sequence.has_value()) {
      doc = snzlab::io::pseq_to_json(*result.sequence);
    } else {
      doc["schema"] = snzlab::io::kSchemaTag;
      doc["completed_levels"] = result.completed_levels;
      doc["note"] = result.note;
    }
    *out_json = dup_string(snzlab::io::to_stable_string(doc));
    return SNZLAB_OK;
  });
}

/* --- growth check ----------------------------------------------------------- */

snzlab_status snzlab_check_growth(const snzlab_pseq* p, const char* growth_spec,
                                  size_t k_max, int* out_all_ok,
                                  char** out_report_json) {
  if (snzlab_status bad = require(p && growth_spec && out_all_ok &&
                                      out_report_json,
                                  "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const snzlab::GrowthSpec spec = snzlab::GrowthSpec::parse(growth_spec);
    const snzlab::GrowthReport report =
        snzlab::check_growth(p->impl, spec, k_max);
    *out_all_ok = report.all_ok() ? 1 : 0;
    *out_report_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::growth_report_to_json(report)));
    return SNZLAB_OK;
  });
}

/* --- lemma battery ----------------------------------------------------------- */

snzlab_status snzlab_check_lemmas(size_t t, int has_s, size_t s, int* out_all_ok,
                                  char** out_report_json) {
  if (snzlab_status bad =
          require(out_all_ok && out_report_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const std::optional<std::size_t> s_opt =
        has_s ? std::optional<std::size_t>(s) : std::nullopt;
    const snzlab::CheckReport report = snzlab::run_lemma_checks(t, s_opt);
    *out_all_ok = report.all_ok() ? 1 : 0;
    *out_report_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::check_report_to_json(report)));
    return SNZLAB_OK;
  });
}

/* --- demos --------------------------------------------------------------------- */

snzlab_status snzlab_demo_chain(uint64_t n, const char* r, const char* r_prime,
                                char** out_json) {
  if (snzlab_status bad = require(r && r_prime && out_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    snzlab::BigRat lo = snzlab::bigrat_from_string(r);
    snzlab::BigRat hi = snzlab::bigrat_from_string(r_prime);
    if (hi < lo) std::swap(lo, hi);
    if (lo == hi) throw snzlab::InvalidInput("chain demo needs r != r'");

    snzlab::io::json doc;
    doc["schema"] = snzlab::io::kSchemaTag;
    doc["n"] = n;
    doc["r"] = snzlab::to_decimal(lo);
    doc["r_prime"] = snzlab::to_decimal(hi);
    snzlab::io::json enumeration = snzlab::io::json::array();
    snzlab::RationalEnumerator stream;
    for (uint64_t i = 1; i <= n; ++i) {
      enumeration.push_back(snzlab::to_decimal(stream.next()));
    }
    doc["enumeration"] = std::move(enumeration);
    doc["chain_r"] = snzlab::chain_set(lo, n);
    doc["chain_r_prime"] = snzlab::chain_set(hi, n);
    const std::optional<snzlab::BigInt> witness =
        snzlab::chain_witness(lo, hi, snzlab::BigInt(1) << 20);
    doc["witness_index"] = witness.has_value()
                               ? snzlab::io::json(snzlab::to_decimal(*witness))
                               : snzlab::io::json(nullptr);
    doc["note"] =
        "A_r = {i : q_i < r} is monotone in r; the witness index i has "
        "r <= q_i < r', so A_r is a strict subset of A_{r'} from i onward.";
    *out_json = dup_string(snzlab::io::to_stable_string(doc));
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_demo_evens(const char* e_decimal, char** out_json) {
  if (snzlab_status bad = require(e_decimal && out_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    const snzlab::EvensWitness witness =
        snzlab::evens_extension_witness(snzlab::bigint_from_decimal(e_decimal));
    *out_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::evens_witness_to_json(witness)));
    return SNZLAB_OK;
  });
}

snzlab_status snzlab_demo_obstruction(const char* a_decimal,
                                      const char* const* values, size_t count,
                                      char** out_json) {
  if (snzlab_status bad =
          require(a_decimal && values && out_json, "null argument")) {
    return bad;
  }
  return guarded([&]() {
    std::vector<snzlab::BigInt> parsed;
    parsed.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      parsed.push_back(snzlab::bigint_from_decimal(values[i]));
    }
    const snzlab::Obstruction ob = snzlab::build_obstruction(
        snzlab::bigint_from_decimal(a_decimal), parsed);
    *out_json = dup_string(
        snzlab::io::to_stable_string(snzlab::io::obstruction_to_json(ob)));
    return SNZLAB_OK;
  });
}

}  // extern "C"
