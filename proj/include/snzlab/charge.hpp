#pragma once

// The permutation-invariant charge attached to an integer sequence p.  The
// charge of a cylinder constrained to 0 on m coordinates and 1 on n others
// depends only on (m, n); its value is the alternating binomial sum
//
//   h(m, n) = sum_{i=0..n} (-1)^i C(n, i) p_{m+i},
//
// and the charge of a general clopen set is the weight-vector combination
// sum_j w_j h(j, t - j) over its full support of size t.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snzlab/clopen.hpp"
#include "snzlab/numeric.hpp"

namespace snzlab {

// How a sequence came to be, carried through JSON output.
struct PSequenceProvenance {
  std::string kind;        // "explicit" | "greedy-minimal"
  std::size_t horizon = 0; // for greedy: largest level certified during growth
  std::string tie_policy;  // for greedy: candidate ordering
  std::string strategy;    // verifier strategy used while growing
};

// Finite prefix p_0, p_1, ..., p_{size-1} of an integer sequence.
class PSequence {
 public:
  explicit PSequence(std::vector<BigInt> terms);

  static PSequence from_ints(const std::vector<long long>& terms);

  std::size_t size() const { return terms_.size(); }
  // Throws InvalidInput when the prefix is too short to answer.
  const BigInt& at(std::size_t k) const;
  const std::vector<BigInt>& terms() const { return terms_; }

  std::optional<PSequenceProvenance> provenance;

 private:
  std::vector<BigInt> terms_;
};

// h(zeros, ones) above; needs p_0..p_{zeros+ones}.
BigInt cylinder_charge(std::size_t zeros, std::size_t ones, const PSequence& p);

// Weight vector of a clopen set over a support of size t: entry j counts the
// patterns with exactly j zero-constraints (so 0 <= w_j <= C(t, j)).
struct WeightVector {
  std::vector<BigInt> w;

  std::size_t level() const { return w.size() - 1; }
  bool any_nonzero() const;
  // All entries within [0, C(t, j)].
  bool in_box() const;
};

// Weight vector over the set's own (minimal) support, or over `over` when
// given; `over` must contain the set's support.
WeightVector weight_vector(const ClopenSet& set,
                           const std::optional<std::vector<Coord>>& over = std::nullopt);

// sum_j w_j h(j, t - j); needs p_0..p_t.
BigInt weighted_charge(const WeightVector& w, const PSequence& p);

// Charge of a clopen set under p.
BigInt charge_of(const ClopenSet& set, const PSequence& p);

// Growth requirement |p_k| > g(k) * sum_{i<k} |p_i| with g(k) = 2^(C * k^B).
// Built from a spec string: "2^k", "2^(k^10)", "2^(100*k)", "2^((100*k)^10)",
// or the alias "default" for 2^((100*k)^10).
class GrowthSpec {
 public:
  static GrowthSpec parse(std::string_view text);

  const std::string& name() const { return name_; }
  // log2 g(k) = C * k^B; exact, never materialized as 2^(..).
  BigInt log2_at(std::size_t k) const;

 private:
  GrowthSpec(std::string name, BigInt coeff, unsigned degree);

  std::string name_;
  BigInt coeff_;
  unsigned degree_;
};

struct GrowthEntry {
  std::size_t k = 0;
  bool ok = false;
  std::size_t actual_bits = 0;   // bit length of |p_k|
  BigInt required_bits;          // bits sufficient to pass at this k
  bool materializable = true;    // required_bits small enough to ever store
  std::string note;
};

struct GrowthReport {
  std::string growth_name;
  std::vector<GrowthEntry> entries;
  bool all_ok() const;
};

// Checks the growth requirement for k = 0..k_max (capped at the last index
// of p).  Comparisons run in log2 space via bit lengths, with an exact
// fallback in the narrow undecided window, so enormous g(k) are fine.
GrowthReport check_growth(const PSequence& p, const GrowthSpec& g,
                          std::size_t k_max);

}  // namespace snzlab
