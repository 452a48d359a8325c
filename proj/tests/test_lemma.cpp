#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "snzlab/charge.hpp"
#include "snzlab/errors.hpp"
#include "snzlab/lemma.hpp"
#include "test_util.hpp"

using snzlab::BigInt;
using snzlab::BigRat;
using snzlab::CheckReport;
using snzlab::DualBasisData;
using snzlab::PSequence;
using snzlab::WeightVector;

namespace {

// Independent determinant by cofactor expansion along the first row.
BigRat cofactor_det(const std::vector<std::vector<BigRat>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigRat total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<BigRat>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigRat> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const BigRat term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

WeightVector random_box_weight(std::mt19937_64& rng, std::size_t t) {
  WeightVector w;
  w.w.resize(t + 1);
  bool nonzero = false;
  while (!nonzero) {
    for (std::size_t j = 0; j <= t; ++j) {
      const BigInt cap = snzlab::binom(t, j);
      w.w[j] = testutil::rand_int(rng, 0, cap.convert_to<std::int64_t>());
      if (w.w[j] != 0) nonzero = true;
    }
  }
  return w;
}

}  // namespace

TEST_CASE("M entries and the dual family match their closed forms") {
  const DualBasisData data = snzlab::build_dual_basis(5);
  REQUIRE(data.m.size() == 6);
  for (std::size_t j = 0; j <= 5; ++j) {
    for (std::size_t k = 0; k <= 5; ++k) {
      const BigInt expected = (k >= j)
          ? ((k - j) % 2 == 0 ? snzlab::binom(5 - j, 5 - k)
                              : -snzlab::binom(5 - j, 5 - k))
          : BigInt(0);
      CHECK(data.m[j][k] == expected);
    }
  }
  for (std::size_t i = 0; i <= 5; ++i) {
    const std::vector<BigInt> u = data.dual_vector(i);
    REQUIRE(u.size() == 6);
    for (std::size_t j = 0; j <= 5; ++j) {
      CHECK(u[j] == snzlab::binom(5 - i, 5 - j));
    }
  }
}

TEST_CASE("columns of M reproduce the cylinder charges") {
  // h(j, t-j) = sum_k M_{j,k} p_k: the matrix is exactly the change of
  // coordinates between weights and sequence terms.
  auto rng = testutil::seeded_rng(80);
  for (std::size_t t = 0; t <= 8; ++t) {
    const DualBasisData data = snzlab::build_dual_basis(t);
    const PSequence p = testutil::random_pseq(rng, t + 1);
    for (std::size_t j = 0; j <= t; ++j) {
      BigInt via_m = 0;
      for (std::size_t k = 0; k <= t; ++k) via_m += data.m[j][k] * p.at(k);
      CHECK(via_m == snzlab::cylinder_charge(j, t - j, p));
    }
  }
}

TEST_CASE("dual basis identity at moderate levels") {
  for (std::size_t t : {0, 1, 2, 3, 5, 8, 12}) {
    CAPTURE(t);
    CHECK(snzlab::check_dual_basis(t));
  }
}

TEST_CASE("recover_b inverts the dual combination") {
  auto rng = testutil::seeded_rng(81);
  for (int round = 0; round < 100; ++round) {
    const std::size_t t = 1 + round % 10;
    const WeightVector w = random_box_weight(rng, t);
    const snzlab::BCoefficients bc = snzlab::recover_b(w);
    REQUIRE(bc.b.size() == bc.s + 1);
    CHECK(bc.b[bc.s] != 0);
    CHECK(snzlab::combine_dual_vectors(bc, t) == w.w);
  }
  WeightVector zero;
  zero.w = {BigInt(0), BigInt(0)};
  CHECK_THROWS_AS(snzlab::recover_b(zero), snzlab::InvalidInput);
}

TEST_CASE("re-indexing: weighted charge equals sum of b_k p_k") {
  auto rng = testutil::seeded_rng(82);
  for (int round = 0; round < 100; ++round) {
    const std::size_t t = 1 + round % 12;
    const WeightVector w = random_box_weight(rng, t);
    const PSequence p = testutil::random_pseq(rng, t + 1);
    const DualBasisData data = snzlab::build_dual_basis(t);
    BigInt rhs = 0;
    for (std::size_t k = 0; k <= t; ++k) {
      const std::vector<BigInt> v = data.column(k);
      BigInt dot = 0;
      for (std::size_t j = 0; j <= t; ++j) dot += w.w[j] * v[j];
      rhs += dot * p.at(k);
    }
    CHECK(snzlab::weighted_charge(w, p) == rhs);
  }
}

TEST_CASE("ptilde closed forms agree") {
  for (std::size_t t : {4, 7, 12}) {
    for (std::size_t i = 0; i <= t; ++i) {
      for (std::size_t j = 0; j <= t; ++j) {
        const BigRat entry = snzlab::ptilde_entry(t, i, j);
        // prod form == C(j,i)/C(t,i) == C(t-i,t-j)/C(t,j).
        const BigRat by_rows = BigRat(snzlab::binom(j, i), snzlab::binom(t, i));
        CHECK(entry == by_rows);
        if (snzlab::binom(t, j) != 0) {
          const BigRat by_cols =
              BigRat(snzlab::binom(t - i, t - j), snzlab::binom(t, j));
          CHECK(entry == by_cols);
        }
        if (i == 0) CHECK(entry == 1);
        if (i > j) CHECK(entry == 0);
      }
    }
  }
  CHECK_THROWS_AS(snzlab::ptilde_entry(0, 0, 0), snzlab::InvalidInput);
}

TEST_CASE("build_ptilde shape") {
  const snzlab::RatioMatrix m = snzlab::build_ptilde(10, 3);
  REQUIRE(m.rows.size() == 4);
  for (const auto& row : m.rows) CHECK(row.size() == 11);
  CHECK(m.rows[0][7] == 1);
  CHECK(m.rows[1][7] == BigRat(7, 10));
}

TEST_CASE("sandwich holds with no violations at moderate t") {
  const CheckReport report = snzlab::check_sandwich(12, 3);
  CHECK(report.all_ok());
  REQUIRE_FALSE(report.entries.empty());
  // Admissible cells: i = 1..3, i < j < t - i -> 9 + 7 + 5 = 21.
  CHECK(report.entries.front().note.find("21") != std::string::npos);
}

TEST_CASE("sandwich inequality spot check") {
  // t = 10, i = 2, j = 5: ((5-2+1)/10)^2 <= P~ <= (5/(10-2+1))^2.
  const BigRat entry = snzlab::ptilde_entry(10, 2, 5);
  CHECK(snzlab::rat_pow(BigRat(4, 10), 2) <= entry);
  CHECK(entry <= snzlab::rat_pow(BigRat(5, 9), 2));
}

TEST_CASE("sample points are spaced floors, strictly increasing") {
  const auto points = snzlab::sample_points(9, 1);
  REQUIRE(points.size() == 2);
  CHECK(points[0].ell == 1);
  CHECK(points[0].lambda == 3);
  CHECK(points[1].lambda == 6);
  REQUIRE(points[0].column.size() == 2);
  CHECK(points[0].column[0] == 1);
  CHECK(points[0].column[1] == BigRat(3, 9));

  const auto wide = snzlab::sample_points(100, 2);
  REQUIRE(wide.size() == 3);
  CHECK(wide[0].lambda == 25);
  CHECK(wide[1].lambda == 50);
  CHECK(wide[2].lambda == 75);

  CHECK_THROWS_AS(snzlab::sample_points(8, 1), snzlab::InvalidInput);
  CHECK_THROWS_AS(snzlab::sample_points(100, 0), snzlab::InvalidInput);
}

TEST_CASE("vandermonde proximity at a small certified scale") {
  for (std::size_t s : {1, 2}) {
    const std::size_t t = 4 * (s + 2) * (s + 2);
    const CheckReport report = snzlab::check_vandermonde_error(t, s);
    CAPTURE(s);
    CHECK(report.all_ok());
  }
  CHECK_THROWS_AS(snzlab::check_vandermonde_error(20, 1),
                  snzlab::InvalidInput);
  // s = 3 at t = 100 puts 4 s^3 / t above 1, outside certified exp range.
  CHECK_THROWS_AS(snzlab::check_vandermonde_error(100, 3),
                  snzlab::InvalidInput);
}

TEST_CASE("rational determinant against cofactor expansion") {
  auto rng = testutil::seeded_rng(83);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + round % 4;
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
    for (auto& row : m) {
      for (auto& cell : row) {
        cell = BigRat(testutil::rand_int(rng, -9, 9),
                      testutil::rand_int(rng, 1, 9));
      }
    }
    CHECK(snzlab::rational_det(m) == cofactor_det(m));
  }
  // Hilbert 3x3.
  std::vector<std::vector<BigRat>> hilbert{
      {BigRat(1), BigRat(1, 2), BigRat(1, 3)},
      {BigRat(1, 2), BigRat(1, 3), BigRat(1, 4)},
      {BigRat(1, 3), BigRat(1, 4), BigRat(1, 5)}};
  CHECK(snzlab::rational_det(hilbert) == BigRat(1, 2160));
}

TEST_CASE("leading principal minors") {
  auto rng = testutil::seeded_rng(84);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 2 + round % 3;
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
    for (auto& row : m) {
      for (auto& cell : row) cell = BigRat(testutil::rand_int(rng, -5, 5));
    }
    const std::vector<BigRat> minors = snzlab::leading_principal_minors(m);
    REQUIRE(minors.size() == n);
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::vector<BigRat>> block(k, std::vector<BigRat>(k));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) block[r][c] = m[r][c];
      }
      CHECK(minors[k - 1] == cofactor_det(block));
    }
  }
}

TEST_CASE("Q at s = 1 in closed form") {
  const snzlab::QuadraticForm q = snzlab::build_q(1);
  REQUIRE(q.q.size() == 2);
  CHECK(q.q[0][0] == 2);
  CHECK(q.q[0][1] == 1);
  CHECK(q.q[1][0] == 1);
  CHECK(q.q[1][1] == BigRat(5, 9));
  CHECK(snzlab::rational_det(q.q) == BigRat(1, 9));
}

TEST_CASE("spectral report at s = 1: the advertised chain bound is too big") {
  const snzlab::SpectralReport report = snzlab::q_spectral_report(1);
  CHECK(report.det_q == BigRat(1, 9));
  CHECK(report.det_lower_bound == BigRat(1, 81));
  CHECK(report.det_ok);
  CHECK(report.chain_bound == BigRat(1, 9));  // det / (s+1)^0
  CHECK(report.eigen_target == BigRat(1, BigInt("10000000000")));
  CHECK(report.chain_ok);
  // Q - (1/9) I is NOT positive definite: minors 17/9 and -13/81.  The
  // exponent 2(s-1) misses one factor of (s+1)^2.
  CHECK_FALSE(report.psd_chain_ok);
  REQUIRE(report.chain_minors.size() == 2);
  CHECK(report.chain_minors[0] == BigRat(17, 9));
  CHECK(report.chain_minors[1] == BigRat(-13, 81));
  // The corrected exponent and the eigen target are certified PSD.
  CHECK(report.corrected_chain_bound == BigRat(1, 36));
  CHECK(report.psd_corrected_ok);
  CHECK(report.psd_eigen_ok);
}

TEST_CASE("spectral chain certifies fully once s >= 2") {
  for (std::size_t s = 2; s <= 4; ++s) {
    const snzlab::SpectralReport report = snzlab::q_spectral_report(s);
    CAPTURE(s);
    CHECK(report.det_ok);
    CHECK(report.chain_ok);
    CHECK(report.psd_chain_ok);
    CHECK(report.psd_corrected_ok);
    CHECK(report.psd_eigen_ok);
    CHECK(report.det_q > 0);
    CHECK(report.corrected_chain_bound <= report.chain_bound);
  }
}

TEST_CASE("b-coefficient size bound on random box weights") {
  auto rng = testutil::seeded_rng(85);
  std::vector<WeightVector> sample;
  for (int round = 0; round < 30; ++round) {
    sample.push_back(random_box_weight(rng, 10));
  }
  const CheckReport report = snzlab::check_bbound(10, sample);
  CHECK(report.all_ok());
  CHECK(report.entries.size() == sample.size());
}

TEST_CASE("run_lemma_checks composes the battery") {
  const CheckReport plain = snzlab::run_lemma_checks(9, std::nullopt);
  CHECK(plain.all_ok());
  bool saw_dual = false;
  bool saw_sandwich = false;
  for (const auto& entry : plain.entries) {
    if (entry.check == "dual-basis") saw_dual = true;
    if (entry.check == "sandwich") saw_sandwich = true;
  }
  CHECK(saw_dual);
  CHECK(saw_sandwich);

  // With s given, the quadratic-form family joins; at s = 1 the literal
  // chain PSD check is the lone red entry.
  const CheckReport with_s = snzlab::run_lemma_checks(9, 1);
  CHECK_FALSE(with_s.all_ok());
  std::size_t violations = 0;
  for (const auto& entry : with_s.entries) {
    if (!entry.ok) {
      ++violations;
      CHECK(entry.check == "q-psd-chain-bound");
    }
  }
  CHECK(violations == 1);

  // At s = 2 everything in the battery holds.
  CHECK(snzlab::run_lemma_checks(16, 2).all_ok());
}
