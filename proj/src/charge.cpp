#include "snzlab/charge.hpp"

#include <algorithm>
#include <bit>

namespace snzlab {

PSequence::PSequence(std::vector<BigInt> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw InvalidInput("a p-sequence needs at least one term");
  }
}

PSequence PSequence::from_ints(const std::vector<long long>& terms) {
  std::vector<BigInt> big(terms.begin(), terms.end());
  return PSequence(std::move(big));
}

const BigInt& PSequence::at(std::size_t k) const {
  if (k >= terms_.size()) {
    throw InvalidInput("p-sequence too short: need p_" + std::to_string(k) +
                       " but only " + std::to_string(terms_.size()) +
                       " terms are given");
  }
  return terms_[k];
}

BigInt cylinder_charge(std::size_t zeros, std::size_t ones, const PSequence& p) {
  // Incremental C(ones, i) keeps the loop free of factorials.
  BigInt coeff = 1;
  BigInt sum = 0;
  for (std::size_t i = 0; i <= ones; ++i) {
    if ((i & 1) == 0) {
      sum += coeff * p.at(zeros + i);
    } else {
      sum -= coeff * p.at(zeros + i);
    }
    if (i < ones) {
      coeff *= static_cast<unsigned long>(ones - i);
      coeff /= static_cast<unsigned long>(i + 1);
    }
  }
  return sum;
}

bool WeightVector::any_nonzero() const {
  return std::any_of(w.begin(), w.end(), [](const BigInt& x) { return x != 0; });
}

bool WeightVector::in_box() const {
  const std::size_t t = level();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] < 0 || w[j] > binom(static_cast<std::int64_t>(t),
                                 static_cast<std::int64_t>(j))) {
      return false;
    }
  }
  return true;
}

WeightVector weight_vector(const ClopenSet& set,
                           const std::optional<std::vector<Coord>>& over) {
  std::vector<Coord> support;
  std::vector<Pattern> patterns;
  if (over.has_value()) {
    ExpandedView view = expand_support(set, *over);
    support = std::move(view.support);
    patterns = std::move(view.patterns);
  } else {
    support = set.support();
    patterns = set.patterns();
  }
  const std::size_t t = support.size();
  WeightVector wv;
  wv.w.assign(t + 1, 0);
  for (Pattern m : patterns) {
    const std::size_t zeros = t - static_cast<std::size_t>(std::popcount(m));
    wv.w[zeros] += 1;
  }
  return wv;
}

BigInt weighted_charge(const WeightVector& wv, const PSequence& p) {
  if (wv.w.empty()) throw InvalidInput("weight vector must have t+1 entries");
  const std::size_t t = wv.level();
  BigInt sum = 0;
  for (std::size_t j = 0; j <= t; ++j) {
    if (wv.w[j] != 0) sum += wv.w[j] * cylinder_charge(j, t - j, p);
  }
  return sum;
}

BigInt charge_of(const ClopenSet& set, const PSequence& p) {
  return weighted_charge(weight_vector(set), p);
}

namespace {

// Parses "A", "k", "A*k", "k^B", "A*k^B" or "(A*k)^B" into C * k^B form.
struct Monomial {
  BigInt coeff;     // C
  unsigned degree;  // B
};

Monomial parse_monomial(std::string_view body) {
  // Optional outer power over a parenthesized base: (BASE)^B.
  if (!body.empty() && body.front() == '(') {
    const std::size_t close = body.rfind(')');
    if (close == std::string_view::npos) {
      throw InvalidInput("growth spec: unmatched '(' in exponent");
    }
    Monomial base = parse_monomial(body.substr(1, close - 1));
    std::string_view rest = body.substr(close + 1);
    if (rest.empty()) return base;
    if (rest.front() != '^') {
      throw InvalidInput("growth spec: expected '^' after ')'");
    }
    const unsigned outer = static_cast<unsigned>(
        std::stoul(std::string(rest.substr(1))));
    // (C * k^B)^outer = C^outer * k^(B*outer)
    BigInt coeff = 1;
    for (unsigned i = 0; i < outer; ++i) coeff *= base.coeff;
    return Monomial{coeff, base.degree * outer};
  }

  BigInt coeff = 1;
  std::string_view rest = body;
  const std::size_t star = rest.find('*');
  if (star != std::string_view::npos) {
    coeff = bigint_from_decimal(rest.substr(0, star));
    rest = rest.substr(star + 1);
  }
  if (rest.empty()) {
    throw InvalidInput("growth spec: empty exponent term");
  }
  if (rest.front() == 'k') {
    rest = rest.substr(1);
    if (rest.empty()) return Monomial{coeff, 1};
    if (rest.front() != '^') {
      throw InvalidInput("growth spec: expected '^' after 'k'");
    }
    const unsigned deg = static_cast<unsigned>(
        std::stoul(std::string(rest.substr(1))));
    return Monomial{coeff, deg};
  }
  // Constant exponent: 2^A.
  if (star != std::string_view::npos) {
    throw InvalidInput("growth spec: '*' without a 'k' term");
  }
  return Monomial{bigint_from_decimal(rest), 0};
}

}  // namespace

GrowthSpec::GrowthSpec(std::string name, BigInt coeff, unsigned degree)
    : name_(std::move(name)), coeff_(std::move(coeff)), degree_(degree) {}

GrowthSpec GrowthSpec::parse(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c != ' ') cleaned.push_back(c);
  }
  if (cleaned == "default") {
    return parse("2^((100*k)^10)");
  }
  if (cleaned.size() < 3 || cleaned.substr(0, 2) != "2^") {
    throw InvalidInput("growth spec must have the form 2^(...) or be "
                       "\"default\", got '" + std::string(text) + "'");
  }
  try {
    Monomial m = parse_monomial(std::string_view(cleaned).substr(2));
    if (m.coeff < 0) {
      throw InvalidInput("growth spec: exponent coefficient must be >= 0");
    }
    return GrowthSpec(cleaned, std::move(m.coeff), m.degree);
  } catch (const std::logic_error& err) {  // stoul errors included
    throw InvalidInput("bad growth spec '" + std::string(text) +
                       "': " + err.what());
  }
}

BigInt GrowthSpec::log2_at(std::size_t k) const {
  BigInt power = 1;
  for (unsigned i = 0; i < degree_; ++i) power *= k;
  return coeff_ * power;
}

bool GrowthReport::all_ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const GrowthEntry& e) { return e.ok; });
}

GrowthReport check_growth(const PSequence& p, const GrowthSpec& g,
                          std::size_t k_max) {
  GrowthReport report;
  report.growth_name = g.name();
  const std::size_t last = std::min(k_max, p.size() - 1);
  BigInt abs_sum = 0;  // sum_{i<k} |p_i|
  for (std::size_t k = 0; k <= last; ++k) {
    GrowthEntry entry;
    entry.k = k;
    entry.actual_bits = bit_length(p.at(k));

    if (abs_sum == 0) {
      // Empty (or all-zero) history: the requirement degenerates to p_k != 0.
      entry.ok = p.at(k) != 0;
      entry.required_bits = 1;
      if (!entry.ok) entry.note = "p_" + std::to_string(k) + " must be nonzero";
    } else {
      const BigInt log2g = g.log2_at(k);
      const BigInt sum_bits = static_cast<std::int64_t>(bit_length(abs_sum));
      const BigInt pk_bits = static_cast<std::int64_t>(entry.actual_bits);
      entry.required_bits = log2g + sum_bits + 1;
      // |p_k| > 2^log2g * S decided by bit lengths except in the one
      // ambiguous window, where the shift is small enough to do exactly.
      if (pk_bits > log2g + sum_bits) {
        entry.ok = true;
      } else if (pk_bits < log2g + sum_bits) {
        entry.ok = false;
      } else {
        const std::size_t shift = static_cast<std::size_t>(log2g);
        entry.ok = boost::multiprecision::abs(p.at(k)) > (abs_sum << shift);
      }
      if (!entry.ok) {
        const BigInt deficit = entry.required_bits - pk_bits;
        entry.materializable = entry.required_bits < (BigInt(1) << 31);
        entry.note = entry.materializable
                         ? "needs about " + approx_decimal(entry.required_bits) +
                               " bits, has " + std::to_string(entry.actual_bits)
                         : "not materializable: a passing p_" +
                               std::to_string(k) + " needs about " +
                               approx_decimal(entry.required_bits) +
                               " bits (short by " + approx_decimal(deficit) + ")";
      }
    }
    report.entries.push_back(std::move(entry));
    abs_sum += boost::multiprecision::abs(p.at(k));
  }
  return report;
}

}  // namespace snzlab
