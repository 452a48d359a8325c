#include "snzlab/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace snzlab {

BigInt binom(std::int64_t a, std::int64_t b) {
  if (a < 0) {
    throw InvalidInput("binom: upper index must be nonnegative, got " +
                       std::to_string(a));
  }
  if (b < 0 || b > a) return 0;
  const std::int64_t k = std::min(b, a - b);
  // Multiplicative form; the division is exact at every step because the
  // running value is itself a binomial coefficient.
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= a - k + i;
    result /= i;
  }
  return result;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(
             boost::multiprecision::abs(v))) +
         1;
}

BigRat rat_pow(const BigRat& base, std::uint64_t exp) {
  BigRat result = 1;
  BigRat acc = base;
  while (exp != 0) {
    if (exp & 1) result *= acc;
    exp >>= 1;
    if (exp != 0) acc *= acc;
  }
  return result;
}

RatInterval exp_bounds(const BigRat& x, unsigned terms) {
  using boost::multiprecision::abs;
  if (abs(x) > 1) {
    throw InvalidInput("exp_bounds: |x| must be <= 1");
  }
  if (terms < 2) {
    throw InvalidInput("exp_bounds: need at least 2 series terms");
  }
  BigRat sum = 1;
  BigRat term = 1;  // x^k / k! after iteration k
  for (unsigned k = 1; k < terms; ++k) {
    term *= x;
    term /= k;
    sum += term;
  }
  // |exp(x) - sum| <= 3 * |x|^terms / terms!  for |x| <= 1: the tail is a
  // geometric-like series whose ratio is at most 1/(terms+1) <= 1/3, so the
  // factor 3 dominates 1/(1 - 1/3).
  BigRat tail = abs(term) * abs(x);
  tail /= terms;
  tail *= 3;
  return RatInterval{sum - tail, sum + tail};
}

BigInt bigint_from_decimal(std::string_view text) {
  if (text.empty()) throw InvalidInput("integer literal is empty");
  std::size_t pos = 0;
  if (text[0] == '-') pos = 1;
  if (pos == text.size()) throw InvalidInput("integer literal has no digits");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw InvalidInput("bad character in integer literal: '" +
                         std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

BigRat bigrat_from_string(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return BigRat(bigint_from_decimal(text));
  }
  BigInt num = bigint_from_decimal(text.substr(0, slash));
  BigInt den = bigint_from_decimal(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("rational literal has zero denominator");
  return BigRat(num, den);
}

std::string to_decimal(const BigInt& v) { return v.str(); }

std::string to_decimal(const BigRat& v) {
  if (boost::multiprecision::denominator(v) == 1) {
    return boost::multiprecision::numerator(v).str();
  }
  return boost::multiprecision::numerator(v).str() + "/" +
         boost::multiprecision::denominator(v).str();
}

std::string approx_decimal(const BigInt& v) {
  const BigInt magnitude = boost::multiprecision::abs(v);
  std::string digits = magnitude.str();
  if (digits.size() <= 24) return v.str();
  std::string head = digits.substr(0, 1) + "." + digits.substr(1, 2);
  std::ostringstream out;
  out << (v < 0 ? "-" : "") << "~" << head << "e+" << digits.size() - 1;
  return out.str();
}

}  // namespace snzlab
