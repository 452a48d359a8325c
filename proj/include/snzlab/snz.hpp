#pragma once

// Strict-nonzeroness verification.  For each level t the verifier decides
// whether any weight vector w != 0 with 0 <= w_j <= C(t, j) satisfies
// sum_j w_j h(j, t - j) = 0.  Such a w is exactly a clopen set whose charge
// vanishes, so a counterexample disproves strict nonzeroness and an
// exhausted search certifies it through level t.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snzlab/charge.hpp"
#include "snzlab/numeric.hpp"

namespace snzlab {

enum class Strategy { exhaustive, meet_in_the_middle };

Strategy strategy_from_string(std::string_view name);
std::string to_string(Strategy s);

enum class Verdict { ok, counterexample, indeterminate };

std::string to_string(Verdict v);

struct Counterexample {
  std::size_t t = 0;
  std::vector<BigInt> w;  // in the level-t box, not all zero
  BigInt sum;             // always 0; rechecked on construction
};

struct SearchOptions {
  Strategy strategy = Strategy::exhaustive;
  unsigned jobs = 1;
  // Wall-clock budget per level in milliseconds; 0 = unlimited.
  std::uint64_t budget_ms = 0;
  // Canonical output: the reported counterexample is the lexicographically
  // least one, and the certificate's ms field is zeroed.
  bool deterministic = false;
  // Meet-in-the-middle falls back to exhaustive when the half-sum table
  // would exceed this many entries.
  std::size_t mitm_max_entries = std::size_t(1) << 23;
};

struct LevelOutcome {
  Verdict verdict = Verdict::indeterminate;
  std::optional<Counterexample> counterexample;
  std::string note;  // "budget exceeded", fallback reason, ...
  // Candidates evaluated; exact for a completed exhaustive scan.
  std::uint64_t vectors_visited = 0;
};

// Decides level t for p (needs p_0..p_t).
LevelOutcome verify_level(const PSequence& p, std::size_t t,
                          const SearchOptions& options = {});

struct LevelReport {
  std::size_t t = 0;
  Verdict verdict = Verdict::indeterminate;
  std::string note;
};

struct SnzCertificate {
  std::string p_digest;
  std::vector<LevelReport> levels;              // t = 0 .. last checked
  std::optional<Counterexample> counterexample; // present iff some level failed
  std::string strategy;
  std::uint64_t ms = 0;
};

// Checks levels 0..t_max in order, stopping at the first counterexample or
// indeterminate level.
SnzCertificate verify_range(const PSequence& p, std::size_t t_max,
                            const SearchOptions& options = {});

// Digest binding a certificate to its sequence (FNV-1a over the decimal terms).
std::string pseq_digest(const PSequence& p);

// Re-checks a certificate against p: digest match, contiguous levels, verdict
// consistency, and exact re-evaluation of any counterexample.  Returns false
// with a reason instead of throwing so callers can report.
bool validate_certificate(const SnzCertificate& cert, const PSequence& p,
                          std::string* why = nullptr);

// --- Greedy growth ------------------------------------------------------

struct GreedyOptions {
  Strategy strategy = Strategy::meet_in_the_middle;
  unsigned jobs = 1;
  std::uint64_t budget_ms = 0;           // per verifier call; 0 = unlimited
  std::uint64_t candidate_limit = 1'000'000;  // |v| cap during the scan
};

// Smallest |v| (ties: positive first) such that prefix + [v] passes SNZ
// verification at level k = |prefix|; the prefix itself must already pass
// all levels < k.  nullopt when the budget ran out or no candidate within
// the scan cap works.
std::optional<BigInt> greedy_next_term(const std::vector<BigInt>& prefix,
                                       const GreedyOptions& options = {});

struct GreedyResult {
  std::optional<PSequence> sequence;  // present iff every level was certified
  std::size_t completed_levels = 0;
  std::string note;
};

// Runs greedy_next_term from the empty prefix up to level `horizon`
// inclusive; on success the sequence carries greedy provenance.
GreedyResult greedy_sequence(std::size_t horizon, const GreedyOptions& options = {});

}  // namespace snzlab
