#ifndef SNZLAB_H
#define SNZLAB_H

/*
 * C interface to the snzlab core: exact permutation-invariant charges on the
 * clopen algebra of Cantor space, strict-nonzeroness verification with
 * certificates, the exact lemma battery, and the non-extendability demos.
 *
 * Conventions:
 *   - Every function returns a snzlab_status; domain verdicts (for example
 *     "counterexample found") are reported through out-parameters, never as
 *     error statuses.
 *   - On any non-OK status, snzlab_last_error() describes the failure; the
 *     message is thread-local and valid until the next call on that thread.
 *   - All strings produced by the library (out_json, out_text, ...) are
 *     heap-allocated and must be released with snzlab_string_free().
 *   - Big integers and rationals cross the boundary as decimal strings
 *     ("-123", "5/9"); nothing is ever rounded.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SNZLAB_API __declspec(dllexport)
#else
#define SNZLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snzlab_status {
  SNZLAB_OK = 0,
  SNZLAB_ERR_INVALID = 1,  /* precondition violation / rejected input */
  SNZLAB_ERR_PARSE = 2,    /* syntax error (expression or JSON) */
  SNZLAB_ERR_NOMEM = 3,
  SNZLAB_ERR_INTERNAL = 4
} snzlab_status;

/* Domain answer of a verification run. */
typedef enum snzlab_verdict {
  SNZLAB_VERDICT_OK = 0,
  SNZLAB_VERDICT_COUNTEREXAMPLE = 1,
  SNZLAB_VERDICT_INDETERMINATE = 3
} snzlab_verdict;

typedef struct snzlab_pseq snzlab_pseq;     /* opaque integer sequence */
typedef struct snzlab_clopen snzlab_clopen; /* opaque canonical clopen set */

SNZLAB_API const char* snzlab_last_error(void);
SNZLAB_API void snzlab_string_free(char* text);

/* --- p-sequences ------------------------------------------------------- */

/* Accepts {"p": ["1", "-1", ...]} documents (schema "snzlab/1"). */
SNZLAB_API snzlab_status snzlab_pseq_from_json(const char* json_text,
                                               snzlab_pseq** out);
SNZLAB_API snzlab_status snzlab_pseq_from_terms(const char* const* decimal_terms,
                                                size_t count, snzlab_pseq** out);
SNZLAB_API snzlab_status snzlab_pseq_to_json(const snzlab_pseq* p,
                                             char** out_json);
SNZLAB_API size_t snzlab_pseq_size(const snzlab_pseq* p);
SNZLAB_API void snzlab_pseq_free(snzlab_pseq* p);

/* --- clopen sets and charges ------------------------------------------- */

/* Parses the expression language (atoms H({..},{..}), EMPTY, FULL;
 * operators |, &, \, ~) into a canonical set. */
SNZLAB_API snzlab_status snzlab_clopen_parse(const char* expression,
                                             snzlab_clopen** out);
SNZLAB_API snzlab_status snzlab_clopen_print(const snzlab_clopen* set,
                                             char** out_text);
SNZLAB_API snzlab_status snzlab_clopen_to_json(const snzlab_clopen* set,
                                               char** out_json);
SNZLAB_API void snzlab_clopen_free(snzlab_clopen* set);

/* Charge of the set under p, as a decimal string. */
SNZLAB_API snzlab_status snzlab_charge(const snzlab_clopen* set,
                                       const snzlab_pseq* p,
                                       char** out_decimal);

/* --- strict-nonzeroness verification ------------------------------------ */

typedef struct snzlab_search_options {
  const char* strategy; /* "exhaustive" | "meet_in_the_middle"; NULL = exhaustive */
  unsigned jobs;        /* worker threads; 0 or 1 = single-threaded */
  uint64_t budget_ms;   /* per-level wall budget; 0 = unlimited */
  int deterministic;    /* nonzero: canonical output (lex-least witness, ms=0) */
} snzlab_search_options;

/* Verifies levels 0..t_max; emits the certificate JSON and the overall
 * verdict (the last level's outcome). */
SNZLAB_API snzlab_status snzlab_verify_range(const snzlab_pseq* p, size_t t_max,
                                             const snzlab_search_options* options,
                                             int* out_verdict,
                                             char** out_certificate_json);

/* Re-checks a certificate against p.  out_valid is 1/0; on 0, out_reason
 * (optional) explains the first inconsistency. */
SNZLAB_API snzlab_status snzlab_validate_certificate(const char* certificate_json,
                                                     const snzlab_pseq* p,
                                                     int* out_valid,
                                                     char** out_reason);

/* --- greedy-minimal growth ---------------------------------------------- */

/* Grows the lexicon-least sequence whose every level 0..horizon verifies.
 * candidate_limit caps the magnitude scanned per level (0 picks the library
 * default).  out_complete is 1 when the horizon was reached; the JSON
 * document carries either the finished sequence or the progress note. */
SNZLAB_API snzlab_status snzlab_greedy_sequence(size_t horizon,
                                                const snzlab_search_options* options,
                                                uint64_t candidate_limit,
                                                int* out_complete,
                                                char** out_json);

/* --- growth-condition check --------------------------------------------- */

/* growth_spec: "2^k", "2^(k^10)", "2^((100*k)^10)", or "default". */
SNZLAB_API snzlab_status snzlab_check_growth(const snzlab_pseq* p,
                                             const char* growth_spec,
                                             size_t k_max, int* out_all_ok,
                                             char** out_report_json);

/* --- lemma battery ------------------------------------------------------- */

/* Dual basis + sandwich at level t; with has_s, also the quadratic-form
 * chain and (when t is large enough) the Vandermonde-proximity check. */
SNZLAB_API snzlab_status snzlab_check_lemmas(size_t t, int has_s, size_t s,
                                             int* out_all_ok,
                                             char** out_report_json);

/* --- non-extendability demos --------------------------------------------- */

/* Chain A_r = {i <= n : q_i < r} over the fixed rational enumeration, for
 * r and r_prime (decimal or "num/den"), with a strictness witness. */
SNZLAB_API snzlab_status snzlab_demo_chain(uint64_t n, const char* r,
                                           const char* r_prime, char** out_json);

/* Witness that mu(evens) = e forces a charge-0 infinite set. */
SNZLAB_API snzlab_status snzlab_demo_evens(const char* e_decimal,
                                           char** out_json);

/* Pigeonhole obstruction for prescribing `count` = |a|+1 distinct values on
 * a nested chain. */
SNZLAB_API snzlab_status snzlab_demo_obstruction(const char* a_decimal,
                                                 const char* const* values,
                                                 size_t count, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SNZLAB_H */
