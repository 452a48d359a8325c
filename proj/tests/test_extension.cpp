#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "snzlab/errors.hpp"
#include "snzlab/extension.hpp"
#include "test_util.hpp"

using snzlab::BigInt;
using snzlab::BigRat;
using snzlab::FinCofSet;

TEST_CASE("finite-cofinite charges") {
  CHECK(snzlab::fincof_charge(FinCofSet::finite({})) == 0);
  CHECK(snzlab::fincof_charge(FinCofSet::finite({3, 1, 3})) == 2);
  CHECK(snzlab::fincof_charge(FinCofSet::cofinite_excluding({})) == -1);
  CHECK(snzlab::fincof_charge(FinCofSet::cofinite_excluding({5, 9})) == -3);
  CHECK_THROWS_AS(FinCofSet::finite({0, 1}), snzlab::InvalidInput);
}

TEST_CASE("fincof algebra and additivity") {
  auto rng = testutil::seeded_rng(90);
  auto random_fincof = [&rng]() {
    std::vector<std::uint64_t> members;
    const int size = static_cast<int>(testutil::rand_int(rng, 0, 6));
    for (int i = 0; i < size; ++i) {
      members.push_back(static_cast<std::uint64_t>(testutil::rand_int(rng, 1, 12)));
    }
    return testutil::rand_int(rng, 0, 1) == 0
               ? FinCofSet::finite(members)
               : FinCofSet::cofinite_excluding(members);
  };
  for (int round = 0; round < 300; ++round) {
    const FinCofSet a = random_fincof();
    const FinCofSet b = random_fincof();
    const FinCofSet join = fincof_union(a, b);
    const FinCofSet meet = fincof_intersection(a, b);
    // Inclusion-exclusion holds for any finitely additive charge.
    CHECK(fincof_charge(join) + fincof_charge(meet) ==
          fincof_charge(a) + fincof_charge(b));
    // Complement law against mu(N) = -1.
    CHECK(fincof_charge(a) + fincof_charge(fincof_complement(a)) == -1);
    if (snzlab::fincof_disjoint(a, b)) {
      CHECK(fincof_charge(join) == fincof_charge(a) + fincof_charge(b));
    }
  }
  // Two cofinite sets always share an element.
  CHECK_FALSE(snzlab::fincof_disjoint(FinCofSet::cofinite_excluding({1}),
                                      FinCofSet::cofinite_excluding({2})));
}

TEST_CASE("Calkin-Wilf values: the classical head of the tree") {
  const std::vector<BigRat> head{
      BigRat(1),    BigRat(1, 2), BigRat(2),    BigRat(1, 3),
      BigRat(3, 2), BigRat(2, 3), BigRat(3),    BigRat(1, 4),
      BigRat(4, 3), BigRat(3, 5), BigRat(5, 2), BigRat(2, 5),
      BigRat(5, 3), BigRat(3, 4), BigRat(4)};
  for (std::size_t i = 0; i < head.size(); ++i) {
    CAPTURE(i);
    CHECK(snzlab::calkin_wilf_value(BigInt(i + 1)) == head[i]);
    CHECK(snzlab::calkin_wilf_index(head[i]) == BigInt(i + 1));
  }
  CHECK_THROWS_AS(snzlab::calkin_wilf_value(BigInt(0)), snzlab::InvalidInput);
  CHECK_THROWS_AS(snzlab::calkin_wilf_index(BigRat(-1, 2)),
                  snzlab::InvalidInput);
}

TEST_CASE("Calkin-Wilf index/value are mutually inverse") {
  for (std::int64_t n = 1; n <= 5000; ++n) {
    CHECK(snzlab::calkin_wilf_index(snzlab::calkin_wilf_value(BigInt(n))) ==
          BigInt(n));
  }
  // Deep thin paths stay exact (index 2^40 is a 41-level-deep leftmost leaf).
  const BigInt deep = BigInt(1) << 40;
  CHECK(snzlab::calkin_wilf_index(snzlab::calkin_wilf_value(deep)) == deep);
  CHECK(snzlab::calkin_wilf_value(deep) == BigRat(1, 41));
}

TEST_CASE("the full enumeration interleaves 0 and signed values") {
  CHECK(snzlab::rational_at(BigInt(1)) == 0);
  CHECK(snzlab::rational_at(BigInt(2)) == 1);
  CHECK(snzlab::rational_at(BigInt(3)) == -1);
  CHECK(snzlab::rational_at(BigInt(4)) == BigRat(1, 2));
  CHECK(snzlab::rational_at(BigInt(5)) == BigRat(-1, 2));
  CHECK(snzlab::rational_at(BigInt(6)) == 2);
  CHECK(snzlab::rational_at(BigInt(7)) == -2);

  // Every rational appears exactly once: round-trip plus a collision sweep.
  std::set<BigRat> seen;
  for (std::int64_t i = 1; i <= 2000; ++i) {
    const BigRat q = snzlab::rational_at(BigInt(i));
    CHECK(snzlab::rational_index(q) == BigInt(i));
    CHECK(seen.insert(q).second);
  }
}

TEST_CASE("the streaming enumerator matches rational_at") {
  snzlab::RationalEnumerator stream;
  for (std::int64_t i = 1; i <= 3000; ++i) {
    CHECK(stream.index() == BigInt(i));
    CHECK(stream.next() == snzlab::rational_at(BigInt(i)));
  }
}

TEST_CASE("chain sets are nested exactly as their thresholds") {
  const auto small = snzlab::chain_set(BigRat(1, 3), 64);
  const auto large = snzlab::chain_set(BigRat(1, 2), 64);
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  // Direct re-computation.
  for (std::uint64_t i = 1; i <= 64; ++i) {
    const bool member = snzlab::rational_at(BigInt(i)) < BigRat(1, 3);
    const bool listed =
        std::binary_search(small.begin(), small.end(), i);
    CHECK(member == listed);
  }
  CHECK_THROWS_AS(snzlab::chain_set(BigRat(0), 0), snzlab::InvalidInput);
}

TEST_CASE("chain witness finds the least index strictly between thresholds") {
  // First q_i in [1/3, 1/2): 1/3 itself, at index 2*4 = 8.
  const auto witness =
      snzlab::chain_witness(BigRat(1, 3), BigRat(1, 2), BigInt(100000));
  REQUIRE(witness.has_value());
  CHECK(*witness == 8);
  const BigRat q = snzlab::rational_at(*witness);
  CHECK(BigRat(1, 3) <= q);
  CHECK(q < BigRat(1, 2));
  for (BigInt i = 1; i < *witness; ++i) {
    const BigRat earlier = snzlab::rational_at(i);
    CHECK((earlier < BigRat(1, 3) || earlier >= BigRat(1, 2)));
  }
  // Degenerate interval is rejected outright.
  CHECK_THROWS_AS(
      snzlab::chain_witness(BigRat(1, 2), BigRat(1, 2), BigInt(1000)),
      snzlab::InvalidInput);
  // A sliver just above 1/3 excludes 1/3 itself, and every rational inside
  // it has an enormous Calkin-Wilf index: the capped search comes up empty.
  CHECK_FALSE(snzlab::chain_witness(BigRat(1000000007, 3000000000),
                                    BigRat(1000000008, 3000000000),
                                    BigInt(1000))
                  .has_value());
  // The witness index is bounded by the index of any rational inside the
  // window, e.g. the mediant.
  const BigRat mediant(1 + 1, 3 + 2);
  CHECK(*witness <= snzlab::rational_index(mediant));
}

TEST_CASE("evens witness across signs") {
  // e >= 0: remove e elements from the evens themselves.
  const snzlab::EvensWitness plus = snzlab::evens_extension_witness(BigInt(5));
  CHECK(plus.base_is_evens);
  CHECK(plus.base_charge == 5);
  CHECK(plus.removed_count == 5);
  CHECK(plus.removed_head == std::vector<std::uint64_t>{2, 4, 6, 8, 10});
  CHECK_FALSE(plus.derivation.empty());

  // e < 0: the odds carry the positive budget -1 - e.
  const snzlab::EvensWitness minus =
      snzlab::evens_extension_witness(BigInt(-4));
  CHECK_FALSE(minus.base_is_evens);
  CHECK(minus.base_charge == 3);
  CHECK(minus.removed_count == 3);
  CHECK(minus.removed_head == std::vector<std::uint64_t>{1, 3, 5});

  // e = -1 forces mu(odds) = 0 with nothing removed at all.
  const snzlab::EvensWitness zero =
      snzlab::evens_extension_witness(BigInt(-1));
  CHECK_FALSE(zero.base_is_evens);
  CHECK(zero.base_charge == 0);
  CHECK(zero.removed_count == 0);
  CHECK(zero.removed_head.empty());

  // e = 0 forces mu(evens) = 0 directly.
  const snzlab::EvensWitness even_zero =
      snzlab::evens_extension_witness(BigInt(0));
  CHECK(even_zero.base_is_evens);
  CHECK(even_zero.removed_count == 0);
}

TEST_CASE("pigeonhole pair equals the quadratic-scan oracle") {
  auto rng = testutil::seeded_rng(91);
  for (int round = 0; round < 300; ++round) {
    const std::int64_t modulus = testutil::rand_int(rng, 1, 9);
    const std::size_t count =
        static_cast<std::size_t>(modulus) + 1 +
        static_cast<std::size_t>(testutil::rand_int(rng, 0, 5));
    std::vector<BigInt> values;
    for (std::size_t i = 0; i < count; ++i) {
      values.emplace_back(testutil::rand_int(rng, -50, 50));
    }
    const auto [l, m] = snzlab::pigeonhole_pair(values, BigInt(modulus));
    // Oracle: smallest l, then smallest m, both 1-based.
    std::size_t ol = 0, om = 0;
    for (std::size_t i = 0; i < count && ol == 0; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        if ((values[i] - values[j]) % modulus == 0) {
          ol = i + 1;
          om = j + 1;
          break;
        }
      }
    }
    CAPTURE(round);
    CHECK(l == ol);
    CHECK(m == om);
    CHECK(l < m);
    CHECK((values[l - 1] - values[m - 1]) % modulus == 0);
  }
  CHECK_THROWS_AS(
      snzlab::pigeonhole_pair({BigInt(1), BigInt(2)}, BigInt(2)),
      snzlab::InvalidInput);  // needs modulus + 1 values
  CHECK_THROWS_AS(snzlab::pigeonhole_pair({BigInt(1)}, BigInt(0)),
                  snzlab::InvalidInput);
}

TEST_CASE("pigeonhole with negative values uses true congruence") {
  // -3 and 7 agree mod 5.
  const auto [l, m] =
      snzlab::pigeonhole_pair({BigInt(-3), BigInt(1), BigInt(7), BigInt(2),
                               BigInt(11), BigInt(100)},
                              BigInt(5));
  CHECK(l == 1);
  CHECK(m == 3);
}

TEST_CASE("obstruction: worked examples") {
  // a = 2 with values (5, 8, 13): 5 = 13 mod 2 -> pair (1,3), p = 4.
  const snzlab::Obstruction first =
      snzlab::build_obstruction(BigInt(2), {BigInt(5), BigInt(8), BigInt(13)});
  CHECK(first.l == 1);
  CHECK(first.m == 3);
  CHECK(first.p == 4);
  CHECK(first.f_charge == 8);
  CHECK(first.f_charge == first.p * first.a);
  CHECK_FALSE(first.narrative.empty());
  CHECK(first.g_head.size() == 4);

  // a = 3 with values (10, 11, 12, 13): 10 = 13 mod 3 -> pair (1,4), p = 1.
  const snzlab::Obstruction second = snzlab::build_obstruction(
      BigInt(3), {BigInt(10), BigInt(11), BigInt(12), BigInt(13)});
  CHECK(second.l == 1);
  CHECK(second.m == 4);
  CHECK(second.p == 1);
  CHECK(second.f_charge == 3);

  // Decreasing prescription flips the chain orientation; p stays >= 1.
  const snzlab::Obstruction third =
      snzlab::build_obstruction(BigInt(2), {BigInt(13), BigInt(8), BigInt(5)});
  CHECK(third.p >= 1);
  CHECK(third.f_charge == third.p * third.a);

  // Negative modulus keeps mu(F) a positive multiple of |steps|.
  const snzlab::Obstruction negative = snzlab::build_obstruction(
      BigInt(-2), {BigInt(5), BigInt(8), BigInt(13)});
  CHECK(negative.p >= 1);
  CHECK(negative.f_charge == negative.p * negative.a);
}

TEST_CASE("obstruction on random valid prescriptions") {
  auto rng = testutil::seeded_rng(92);
  for (int round = 0; round < 200; ++round) {
    const std::int64_t a_mag = testutil::rand_int(rng, 1, 6);
    const std::int64_t a =
        testutil::rand_int(rng, 0, 1) == 0 ? a_mag : -a_mag;
    std::set<std::int64_t> picked;
    while (picked.size() < static_cast<std::size_t>(a_mag) + 1) {
      picked.insert(testutil::rand_int(rng, -40, 40));
    }
    std::vector<BigInt> values(picked.begin(), picked.end());
    if (round % 2 == 0) std::reverse(values.begin(), values.end());
    const snzlab::Obstruction witness =
        snzlab::build_obstruction(BigInt(a), values);
    CAPTURE(a);
    CHECK(witness.l >= 1);
    CHECK(witness.l < witness.m);
    CHECK(witness.m <= values.size());
    CHECK((values[witness.l - 1] - values[witness.m - 1]) % BigInt(a) == 0);
    CHECK(witness.p >= 1);
    CHECK(witness.f_charge == witness.p * witness.a);
    CHECK_FALSE(witness.f_description.empty());
  }
}

TEST_CASE("obstruction input validation") {
  CHECK_THROWS_AS(snzlab::build_obstruction(BigInt(0), {BigInt(1)}),
                  snzlab::InvalidInput);
  CHECK_THROWS_AS(
      snzlab::build_obstruction(BigInt(2), {BigInt(1), BigInt(2)}),
      snzlab::InvalidInput);  // needs |a| + 1 values
  CHECK_THROWS_AS(snzlab::build_obstruction(
                      BigInt(2), {BigInt(1), BigInt(1), BigInt(2)}),
                  snzlab::InvalidInput);  // values must be distinct
  CHECK_THROWS_AS(snzlab::build_obstruction(BigInt("10000000"),
                                            std::vector<BigInt>{}),
                  snzlab::InvalidInput);  // modulus cap
}
