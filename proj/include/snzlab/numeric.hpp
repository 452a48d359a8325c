#pragma once

// Exact integer / rational arithmetic used throughout the library.  Every
// quantity the library certifies is computed in these types; no floating
// point is involved anywhere in a verdict.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "snzlab/errors.hpp"

namespace snzlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Binomial coefficient C(a, b).  Requires a >= 0; returns 0 whenever b < 0
// or b > a, so identities like Pascal's rule hold without edge-case guards.
BigInt binom(std::int64_t a, std::int64_t b);

// Number of bits in |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

// base^exp for rational base and small non-negative exponent.
BigRat rat_pow(const BigRat& base, std::uint64_t exp);

// Closed rational interval [lo, hi].
struct RatInterval {
  BigRat lo;
  BigRat hi;

  bool contains(const BigRat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  BigRat width() const { return hi - lo; }
};

// Certified enclosure of exp(x) for |x| <= 1: the Taylor partial sum with
// `terms` terms (terms >= 2) widened by the remainder bound 3*|x|^terms/terms!.
// Increasing `terms` yields a nested, shrinking interval.
RatInterval exp_bounds(const BigRat& x, unsigned terms);

// Strict decimal integer parser: optional leading '-', then digits only.
BigInt bigint_from_decimal(std::string_view text);

// Parses "n" or "n/d" with d > 0 after normalization; result is reduced.
BigRat bigrat_from_string(std::string_view text);

// Decimal rendering (BigRat renders as "n" or "n/d", reduced, d > 0).
std::string to_decimal(const BigInt& v);
std::string to_decimal(const BigRat& v);

// Compact approximate rendering for values too large to print in full,
// e.g. "≈3.21e+4096".  Exact (decimal) below 10^24.
std::string approx_decimal(const BigInt& v);

}  // namespace snzlab
