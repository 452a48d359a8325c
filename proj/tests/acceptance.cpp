// Acceptance gate: one line per criterion, PASS/FAIL plus wall time, exit
// code equal to the number of failing criteria.  Each criterion is stated
// over the library's public C++ surface; independent oracles are embedded
// where a criterion calls for one.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "snzlab/charge.hpp"
#include "snzlab/clopen.hpp"
#include "snzlab/clopen_lang.hpp"
#include "snzlab/errors.hpp"
#include "snzlab/extension.hpp"
#include "snzlab/json_io.hpp"
#include "snzlab/lemma.hpp"
#include "snzlab/numeric.hpp"
#include "snzlab/snz.hpp"
#include "test_util.hpp"

using snzlab::BigInt;
using snzlab::BigRat;
using snzlab::ClopenSet;
using snzlab::Coord;
using snzlab::PSequence;
using snzlab::Verdict;
using snzlab::WeightVector;

namespace {

struct Criterion {
  std::string label;
  std::function<bool(std::vector<std::string>&)> body;
};

bool expect(std::vector<std::string>& problems, bool condition,
            const std::string& detail) {
  if (!condition) problems.push_back(detail);
  return condition;
}

std::string format_seconds(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2fs", seconds);
  return buffer;
}

snzlab::FinPermutation random_permutation(std::mt19937_64& rng) {
  // Shuffle a random subset of [0, 12) onto itself.
  std::vector<Coord> moved;
  for (Coord c = 0; c < 12; ++c) {
    if (testutil::rand_int(rng, 0, 2) == 0) moved.push_back(c);
  }
  std::vector<Coord> image = moved;
  std::shuffle(image.begin(), image.end(), rng);
  std::vector<std::pair<Coord, Coord>> pairs;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    if (moved[i] != image[i]) pairs.emplace_back(moved[i], image[i]);
  }
  return snzlab::FinPermutation::from_pairs(pairs);
}

// --- Criterion bodies -------------------------------------------------------

bool criterion_dual_basis(std::vector<std::string>& problems) {
  bool ok = true;
  for (std::size_t t = 0; t <= 30; ++t) {
    ok &= expect(problems, snzlab::check_dual_basis(t),
                 "duality broke at t = " + std::to_string(t));
  }
  return ok;
}

bool criterion_recurrence(std::vector<std::string>& problems) {
  bool ok = true;
  auto rng = testutil::seeded_rng(1001);
  const PSequence p = testutil::random_pseq(rng, 42, 1'000'000);
  for (std::size_t m = 0; m <= 40; ++m) {
    for (std::size_t n = 0; m + n <= 40; ++n) {
      if (snzlab::cylinder_charge(m, n, p) !=
          snzlab::cylinder_charge(m + 1, n, p) +
              snzlab::cylinder_charge(m, n + 1, p)) {
        ok = expect(problems, false,
                    "recurrence failed at (m, n) = (" + std::to_string(m) +
                        ", " + std::to_string(n) + ")");
      }
    }
  }
  for (int round = 0; round < 200; ++round) {
    const std::size_t t = 1 + round % 12;
    const PSequence q = testutil::random_pseq(rng, t + 1);
    WeightVector w;
    w.w.resize(t + 1);
    for (std::size_t j = 0; j <= t; ++j) {
      w.w[j] = testutil::rand_int(
          rng, 0, snzlab::binom(t, j).convert_to<std::int64_t>());
    }
    const snzlab::DualBasisData basis = snzlab::build_dual_basis(t);
    BigInt rhs = 0;
    for (std::size_t k = 0; k <= t; ++k) {
      const std::vector<BigInt> v = basis.column(k);
      BigInt dot = 0;
      for (std::size_t j = 0; j <= t; ++j) dot += w.w[j] * v[j];
      rhs += dot * q.at(k);
    }
    if (snzlab::weighted_charge(w, q) != rhs) {
      ok = expect(problems, false,
                  "re-indexing failed on sample " + std::to_string(round));
    }
  }
  return ok;
}

bool criterion_charge_laws(std::vector<std::string>& problems) {
  bool ok = true;
  auto rng = testutil::seeded_rng(1002);
  for (int round = 0; round < 500; ++round) {
    const ClopenSet a = testutil::random_clopen(rng, 5, 9);
    const ClopenSet b =
        snzlab::difference_of(testutil::random_clopen(rng, 5, 9), a);
    const PSequence p = testutil::random_pseq(rng, 11);
    if (!snzlab::intersection_of(a, b).is_empty()) {
      ok = expect(problems, false, "disjointness generator broke");
      continue;
    }
    if (snzlab::charge_of(snzlab::union_of(a, b), p) !=
        snzlab::charge_of(a, p) + snzlab::charge_of(b, p)) {
      ok = expect(problems, false,
                  "additivity failed on pair " + std::to_string(round));
    }
    if (snzlab::charge_of(a, p) +
            snzlab::charge_of(snzlab::complement_of(a), p) !=
        p.at(0)) {
      ok = expect(problems, false,
                  "complement law failed on sample " + std::to_string(round));
    }
  }
  for (int round = 0; round < 200; ++round) {
    const ClopenSet set = testutil::random_clopen(rng, 5, 9);
    const PSequence p = testutil::random_pseq(rng, 12);
    std::vector<Coord> over = set.support();
    over.push_back(15);
    over.push_back(17);
    std::sort(over.begin(), over.end());
    if (snzlab::weighted_charge(snzlab::weight_vector(set), p) !=
        snzlab::weighted_charge(snzlab::weight_vector(set, over), p)) {
      ok = expect(problems, false,
                  "support independence failed on sample " +
                      std::to_string(round));
    }
  }
  for (int round = 0; round < 100; ++round) {
    const ClopenSet set = testutil::random_clopen(rng, 5, 9);
    const PSequence p = testutil::random_pseq(rng, 10);
    const snzlab::FinPermutation perm = random_permutation(rng);
    if (snzlab::charge_of(snzlab::apply_permutation(set, perm), p) !=
        snzlab::charge_of(set, p)) {
      ok = expect(problems, false,
                  "permutation invariance failed on sample " +
                      std::to_string(round));
    }
  }
  return ok;
}

bool criterion_greedy_head(std::vector<std::string>& problems) {
  // Oracle first: greedy over explicit w-box enumeration for t <= 2.
  const std::vector<BigInt> oracle = testutil::greedy_oracle(2);
  bool ok = expect(problems,
                   oracle == std::vector<BigInt>{BigInt(1), BigInt(-1),
                                                 BigInt(2)},
                   "brute-force oracle disagrees with (1, -1, 2)");
  const snzlab::GreedyResult engine = snzlab::greedy_sequence(2);
  ok &= expect(problems, engine.sequence.has_value(),
               "greedy engine did not complete 3 levels");
  if (engine.sequence.has_value()) {
    ok &= expect(problems, engine.sequence->terms() == oracle,
                 "engine head differs from the oracle");
  }
  return ok;
}

bool criterion_strategy_agreement(std::vector<std::string>& problems) {
  bool ok = true;
  auto rng = testutil::seeded_rng(1003);
  snzlab::SearchOptions exhaustive;
  exhaustive.strategy = snzlab::Strategy::exhaustive;
  exhaustive.deterministic = true;
  snzlab::SearchOptions mitm;
  mitm.strategy = snzlab::Strategy::meet_in_the_middle;
  mitm.deterministic = true;
  for (int round = 0; round < 50; ++round) {
    const PSequence p = testutil::random_pseq(rng, 6, 4);
    for (std::size_t t = 0; t <= 5; ++t) {
      const auto a = snzlab::verify_level(p, t, exhaustive);
      const auto b = snzlab::verify_level(p, t, mitm);
      if (a.verdict != b.verdict ||
          (a.counterexample.has_value() &&
           a.counterexample->w != b.counterexample->w)) {
        ok = expect(problems, false,
                    "strategies disagree on sample " + std::to_string(round) +
                        " at t = " + std::to_string(t));
      }
    }
  }
  const auto outcome =
      snzlab::verify_level(PSequence::from_ints({1, 1}), 1, exhaustive);
  ok &= expect(problems,
               outcome.verdict == Verdict::counterexample &&
                   outcome.counterexample.has_value() &&
                   outcome.counterexample->w ==
                       std::vector<BigInt>{BigInt(1), BigInt(0)},
               "p = (1,1) did not fail at t = 1 with w = (1,0)");
  return ok;
}

bool criterion_scale_run(std::vector<std::string>& problems) {
  const snzlab::GreedyResult grown = snzlab::greedy_sequence(7);
  bool ok = expect(problems, grown.sequence.has_value(),
                   "greedy growth to level 7 did not complete");
  if (!grown.sequence.has_value()) return false;

  snzlab::SearchOptions options;
  options.strategy = snzlab::Strategy::exhaustive;
  options.jobs = 8;
  options.deterministic = true;
  const auto started = std::chrono::steady_clock::now();
  const snzlab::SnzCertificate cert =
      snzlab::verify_range(*grown.sequence, 7, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  ok &= expect(problems, seconds < 600.0,
               "exhaustive sweep took " + format_seconds(seconds));
  ok &= expect(problems, cert.levels.size() == 8,
               "certificate does not cover t = 0..7");
  for (const auto& level : cert.levels) {
    if (level.verdict != Verdict::ok) {
      ok = expect(problems, false,
                  "level " + std::to_string(level.t) + " not ok");
    }
  }
  // Re-check after a serialization round trip.
  const snzlab::SnzCertificate back = snzlab::io::certificate_from_json(
      snzlab::io::json::parse(snzlab::io::to_stable_string(
          snzlab::io::certificate_to_json(cert))));
  std::string why;
  ok &= expect(problems,
               snzlab::validate_certificate(back, *grown.sequence, &why),
               "certificate failed re-validation: " + why);
  return ok;
}

bool criterion_sandwich(std::vector<std::string>& problems) {
  bool ok = true;
  for (std::size_t t : {std::size_t(50), std::size_t(200)}) {
    const snzlab::CheckReport report = snzlab::check_sandwich(t, 8);
    if (!report.all_ok()) {
      for (const auto& entry : report.entries) {
        if (!entry.ok) {
          ok = expect(problems, false,
                      "violation at t = " + std::to_string(t) + ": " +
                          entry.note);
        }
      }
    }
  }
  return ok;
}

bool criterion_vandermonde(std::vector<std::string>& problems) {
  bool ok = true;
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t t : {std::size_t(1000), std::size_t(10000)}) {
      const snzlab::CheckReport report = snzlab::check_vandermonde_error(t, s);
      if (!report.all_ok()) {
        ok = expect(problems, false,
                    "containment failed at s = " + std::to_string(s) +
                        ", t = " + std::to_string(t));
      }
    }
  }
  return ok;
}

bool criterion_spectral(std::vector<std::string>& problems) {
  bool ok = true;
  for (std::size_t s = 1; s <= 6; ++s) {
    const snzlab::SpectralReport report = snzlab::q_spectral_report(s);
    ok &= expect(problems, report.det_ok,
                 "det lower bound failed at s = " + std::to_string(s));
    ok &= expect(problems, report.chain_ok,
                 "chain-vs-target failed at s = " + std::to_string(s));
    if (!report.psd_chain_ok) {
      std::ostringstream detail;
      detail << "Q - (det/(s+1)^(2(s-1)))I not PSD at s = " << s
             << "; leading minors:";
      for (const BigRat& minor : report.chain_minors) {
        detail << " " << snzlab::to_decimal(minor);
      }
      detail << " (the corrected exponent det/(s+1)^(2s) "
             << (report.psd_corrected_ok ? "does" : "does not")
             << " certify PSD, and the (10s)^(-10s^2) target "
             << (report.psd_eigen_ok ? "does" : "does not") << ")";
      ok = expect(problems, false, detail.str());
    }
    if (s == 1) {
      ok &= expect(problems, report.det_q == BigRat(1, 9),
                   "det(Q) at s = 1 is not 1/9");
    }
  }
  return ok;
}

bool criterion_extension_demos(std::vector<std::string>& problems) {
  bool ok = true;
  for (int e = -50; e <= 50; ++e) {
    const snzlab::EvensWitness witness =
        snzlab::evens_extension_witness(BigInt(e));
    // The witness set is base-minus-finitely-many: infinite, hence nonempty;
    // its forced charge mu(base) - removed must be exactly 0.
    if (witness.base_charge - witness.removed_count != 0 ||
        witness.base_charge < 0 || witness.derivation.empty()) {
      ok = expect(problems, false,
                  "evens witness malformed at e = " + std::to_string(e));
    }
    const bool expected_side = e >= 0;
    if (witness.base_is_evens != expected_side) {
      ok = expect(problems, false,
                  "witness picked the wrong base at e = " + std::to_string(e));
    }
  }
  auto rng = testutil::seeded_rng(1004);
  for (int round = 0; round < 1000; ++round) {
    const std::int64_t modulus = testutil::rand_int(rng, 1, 50);
    const std::size_t count = static_cast<std::size_t>(
        modulus + 1 + testutil::rand_int(rng, 0, 19));
    std::vector<BigInt> values;
    for (std::size_t i = 0; i < count; ++i) {
      values.emplace_back(testutil::rand_int(rng, -1000, 1000));
    }
    try {
      const auto [l, m] = snzlab::pigeonhole_pair(values, BigInt(modulus));
      if (!(1 <= l && l < m && m <= count &&
            (values[l - 1] - values[m - 1]) % BigInt(modulus) == 0)) {
        ok = expect(problems, false,
                    "pigeonhole pair invalid on sample " +
                        std::to_string(round));
      }
    } catch (const std::exception& err) {
      ok = expect(problems, false,
                  "pigeonhole threw on valid input: " + std::string(err.what()));
    }
  }
  return ok;
}

bool criterion_parser(std::vector<std::string>& problems) {
  bool ok = true;
  auto rng = testutil::seeded_rng(1005);
  for (int round = 0; round < 1000; ++round) {
    const ClopenSet set = testutil::random_clopen(rng, 5, 14);
    const std::string text = snzlab::print_clopen(set);
    try {
      const ClopenSet back = snzlab::eval_clopen_text(text);
      if (back != set || snzlab::print_clopen(back) != text) {
        ok = expect(problems, false, "round trip failed on: " + text);
      }
    } catch (const std::exception& err) {
      ok = expect(problems, false,
                  "round trip threw on: " + text + " (" + err.what() + ")");
    }
  }
  const std::vector<std::string> rejects{
      "H({1},{2}) |",   // dangling operator
      "H({1,{2})",      // unbalanced braces in an atom
      "G({1},{2})",     // unknown atom keyword
  };
  for (const std::string& bad : rejects) {
    try {
      snzlab::eval_clopen_text(bad);
      ok = expect(problems, false, "accepted malformed input: " + bad);
    } catch (const snzlab::ParseError& err) {
      const std::string message = err.what();
      const bool has_position = message.find(':') != std::string::npos &&
                                err.line() >= 1 && err.column() >= 1;
      if (!has_position || message.size() < 8) {
        ok = expect(problems, false,
                    "diagnostic lacks position detail: " + message);
      }
    } catch (const std::exception& err) {
      ok = expect(problems, false,
                  "wrong exception type for: " + bad + " (" + err.what() + ")");
    }
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"dual basis <u_i,v_k> = delta exact for all t <= 30",
       criterion_dual_basis},
      {"recurrence h(m,n)=h(m+1,n)+h(m,n+1) for m+n <= 40 and 200 re-indexing samples",
       criterion_recurrence},
      {"charge laws: 500 disjoint unions, complements, support independence, 100 permutations",
       criterion_charge_laws},
      {"greedy-minimal head (1,-1,2) reproduced by the w-box oracle first",
       criterion_greedy_head},
      {"exhaustive and meet-in-the-middle agree on 50 prefixes, t <= 5; (1,1) fails at t=1 w=(1,0)",
       criterion_strategy_agreement},
      {"exhaustive sweep of the greedy sequence through t = 7 on 8 workers; certificate re-validates",
       criterion_scale_run},
      {"sandwich bounds: zero violations at t in {50, 200}, i <= 8",
       criterion_sandwich},
      {"Vandermonde proximity inside exp(+/-4s^3/t) envelopes, s <= 3, t in {10^3, 10^4}",
       criterion_vandermonde},
      {"spectral certificates for 1 <= s <= 6 with det(Q) = 1/9 at s = 1",
       criterion_spectral},
      {"evens witnesses for |e| <= 50 and 1000 pigeonhole successes",
       criterion_extension_demos},
      {"parser round trip on 1000 canonical sets; 3 malformed inputs rejected with positions",
       criterion_parser},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> problems;
    const auto started = std::chrono::steady_clock::now();
    bool passed = false;
    try {
      passed = criteria[i].body(problems);
    } catch (const std::exception& err) {
      problems.push_back(std::string("unhandled exception: ") + err.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    std::printf("C%02zu %s (%s) %s\n", i + 1, passed ? "PASS" : "FAIL",
                format_seconds(seconds).c_str(), criteria[i].label.c_str());
    for (const std::string& problem : problems) {
      std::printf("     - %s\n", problem.c_str());
    }
    if (!passed) ++failures;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n",
              criteria.size() - failures, criteria.size());
  return failures;
}
