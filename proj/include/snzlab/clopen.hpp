#pragma once

// Clopen subsets of the Cantor space {0,1}^N, represented canonically as a
// finite support (sorted coordinate list) plus the set of 0/1 patterns on
// that support whose cylinders make up the set.  The canonical form uses the
// smallest support that can describe the set, so structural equality is
// extensional equality.

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "snzlab/errors.hpp"

namespace snzlab {

using Coord = std::uint32_t;

// One pattern over a support: bit i is the value at the i-th (sorted)
// support coordinate.
using Pattern = std::uint32_t;

// Default ceiling on the materialized support size; pattern sets have up to
// 2^|support| elements, so this keeps every operation's cost bounded.
inline constexpr std::size_t kDefaultSupportLimit = 24;

// H(zeros, ones): all points that are 0 on every coordinate in `zeros` and
// 1 on every coordinate in `ones`.  The two lists must be disjoint.
struct Cylinder {
  std::vector<Coord> zeros;
  std::vector<Coord> ones;
};

class ClopenSet {
 public:
  // Default-constructed set is empty.
  ClopenSet() = default;

  static ClopenSet empty_set();
  static ClopenSet full_space();
  static ClopenSet from_cylinder(const Cylinder& cyl,
                                 std::size_t support_limit = kDefaultSupportLimit);

  // Rebuilds a set from explicit data (e.g. parsed JSON); the result is
  // canonicalized, so redundant coordinates and duplicate patterns are fine.
  static ClopenSet from_patterns(std::vector<Coord> support,
                                 std::vector<Pattern> patterns,
                                 std::size_t support_limit = kDefaultSupportLimit);

  const std::vector<Coord>& support() const { return support_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }

  bool is_empty() const { return patterns_.empty(); }
  bool is_full() const { return support_.empty() && !patterns_.empty(); }

  // Membership of a single point, given as coordinate -> bit.
  bool contains(const std::function<bool(Coord)>& point) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  std::vector<Coord> support_;     // strictly increasing
  std::vector<Pattern> patterns_;  // sorted, deduplicated, minimal support
};

// Same set re-described over a larger support (every pattern split across
// the free coordinates).  `target_support` must contain the set's support.
struct ExpandedView {
  std::vector<Coord> support;
  std::vector<Pattern> patterns;
};
ExpandedView expand_support(const ClopenSet& set, std::vector<Coord> target_support,
                            std::size_t support_limit = kDefaultSupportLimit);

ClopenSet union_of(const ClopenSet& a, const ClopenSet& b,
                   std::size_t support_limit = kDefaultSupportLimit);
ClopenSet intersection_of(const ClopenSet& a, const ClopenSet& b,
                          std::size_t support_limit = kDefaultSupportLimit);
ClopenSet difference_of(const ClopenSet& a, const ClopenSet& b,
                        std::size_t support_limit = kDefaultSupportLimit);
ClopenSet complement_of(const ClopenSet& a,
                        std::size_t support_limit = kDefaultSupportLimit);

// Permutation of N moving only finitely many coordinates.
class FinPermutation {
 public:
  FinPermutation() = default;  // identity

  // Builds from (x, pi(x)) pairs; the moved points must form a bijection.
  static FinPermutation from_pairs(const std::vector<std::pair<Coord, Coord>>& pairs);
  static FinPermutation transposition(Coord a, Coord b);

  Coord operator()(Coord c) const;
  FinPermutation inverse() const;
  // Composition acting as apply(*this) after apply(first).
  FinPermutation after(const FinPermutation& first) const;

  // Only the moved points.
  const std::map<Coord, Coord>& mapping() const { return fwd_; }

 private:
  std::map<Coord, Coord> fwd_;
};

// Image of a clopen set under a finite permutation of coordinates.
ClopenSet apply_permutation(const ClopenSet& set, const FinPermutation& perm);

}  // namespace snzlab
