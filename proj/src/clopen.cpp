#include "snzlab/clopen.hpp"

#include <algorithm>
#include <string>

namespace snzlab {

namespace {

// Upper bound imposed by the 32-bit Pattern representation.
constexpr std::size_t kHardSupportLimit = 31;

void check_limit(std::size_t width, std::size_t support_limit) {
  const std::size_t limit = std::min(support_limit, kHardSupportLimit);
  if (width > limit) {
    throw InvalidInput("support size " + std::to_string(width) +
                       " exceeds limit " + std::to_string(limit));
  }
}

void require_sorted_support(const std::vector<Coord>& support) {
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (support[i - 1] >= support[i]) {
      throw InvalidInput("support must be strictly increasing");
    }
  }
}

// Reduces (support, patterns) to canonical form: patterns sorted and
// deduplicated, and every coordinate the set does not depend on removed.
// A coordinate is removable iff the pattern set is closed under flipping
// its bit; independence is a property of the set itself, so removing all
// flip-closed coordinates in one pass reaches the minimal support.
void canonicalize(std::vector<Coord>& support, std::vector<Pattern>& patterns) {
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  if (patterns.empty()) {
    support.clear();
    return;
  }

  const std::size_t width = support.size();
  std::vector<std::size_t> kept;
  kept.reserve(width);
  for (std::size_t pos = 0; pos < width; ++pos) {
    const Pattern bit = Pattern(1) << pos;
    bool flip_closed = true;
    for (Pattern m : patterns) {
      if (!std::binary_search(patterns.begin(), patterns.end(), m ^ bit)) {
        flip_closed = false;
        break;
      }
    }
    if (!flip_closed) kept.push_back(pos);
  }
  if (kept.size() == width) return;

  std::vector<Coord> new_support;
  new_support.reserve(kept.size());
  for (std::size_t pos : kept) new_support.push_back(support[pos]);

  std::vector<Pattern> projected;
  projected.reserve(patterns.size());
  for (Pattern m : patterns) {
    Pattern out = 0;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if ((m >> kept[k]) & 1) out |= Pattern(1) << k;
    }
    projected.push_back(out);
  }
  std::sort(projected.begin(), projected.end());
  projected.erase(std::unique(projected.begin(), projected.end()),
                  projected.end());

  support = std::move(new_support);
  patterns = std::move(projected);
}

ClopenSet make_canonical(std::vector<Coord> support, std::vector<Pattern> patterns) {
  return ClopenSet::from_patterns(std::move(support), std::move(patterns),
                                  kHardSupportLimit);
}

}  // namespace

ClopenSet ClopenSet::empty_set() { return ClopenSet(); }

ClopenSet ClopenSet::full_space() {
  return from_patterns({}, {Pattern(0)});
}

ClopenSet ClopenSet::from_cylinder(const Cylinder& cyl, std::size_t support_limit) {
  std::vector<Coord> zeros = cyl.zeros;
  std::vector<Coord> ones = cyl.ones;
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
  std::sort(ones.begin(), ones.end());
  ones.erase(std::unique(ones.begin(), ones.end()), ones.end());

  std::vector<Coord> overlap;
  std::set_intersection(zeros.begin(), zeros.end(), ones.begin(), ones.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw InvalidInput("cylinder constraint lists must be disjoint (coordinate " +
                       std::to_string(overlap.front()) + " appears in both)");
  }

  std::vector<Coord> support;
  std::merge(zeros.begin(), zeros.end(), ones.begin(), ones.end(),
             std::back_inserter(support));
  check_limit(support.size(), support_limit);

  Pattern mask = 0;
  for (Coord c : ones) {
    const auto it = std::lower_bound(support.begin(), support.end(), c);
    mask |= Pattern(1) << (it - support.begin());
  }
  return from_patterns(std::move(support), {mask}, support_limit);
}

ClopenSet ClopenSet::from_patterns(std::vector<Coord> support,
                                   std::vector<Pattern> patterns,
                                   std::size_t support_limit) {
  require_sorted_support(support);
  check_limit(support.size(), support_limit);
  const Pattern space = support.size() == 32
                            ? ~Pattern(0)
                            : (Pattern(1) << support.size()) - 1;
  for (Pattern m : patterns) {
    if ((m & ~space) != 0) {
      throw InvalidInput("pattern has bits outside the support width");
    }
  }
  canonicalize(support, patterns);
  ClopenSet set;
  set.support_ = std::move(support);
  set.patterns_ = std::move(patterns);
  return set;
}

bool ClopenSet::contains(const std::function<bool(Coord)>& point) const {
  if (patterns_.empty()) return false;
  Pattern mask = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (point(support_[i])) mask |= Pattern(1) << i;
  }
  return std::binary_search(patterns_.begin(), patterns_.end(), mask);
}

ExpandedView expand_support(const ClopenSet& set, std::vector<Coord> target_support,
                            std::size_t support_limit) {
  require_sorted_support(target_support);
  check_limit(target_support.size(), support_limit);

  const std::vector<Coord>& own = set.support();
  std::vector<std::size_t> image(own.size());
  std::vector<bool> bound(target_support.size(), false);
  for (std::size_t k = 0; k < own.size(); ++k) {
    const auto it = std::lower_bound(target_support.begin(), target_support.end(),
                                     own[k]);
    if (it == target_support.end() || *it != own[k]) {
      throw InvalidInput("target support must contain the set's support");
    }
    image[k] = static_cast<std::size_t>(it - target_support.begin());
    bound[image[k]] = true;
  }
  std::vector<std::size_t> free_pos;
  for (std::size_t pos = 0; pos < target_support.size(); ++pos) {
    if (!bound[pos]) free_pos.push_back(pos);
  }

  ExpandedView view;
  view.support = std::move(target_support);
  view.patterns.reserve(set.patterns().size() << free_pos.size());
  for (Pattern m : set.patterns()) {
    Pattern base = 0;
    for (std::size_t k = 0; k < image.size(); ++k) {
      if ((m >> k) & 1) base |= Pattern(1) << image[k];
    }
    for (Pattern fm = 0; fm < (Pattern(1) << free_pos.size()); ++fm) {
      Pattern mask = base;
      for (std::size_t k = 0; k < free_pos.size(); ++k) {
        if ((fm >> k) & 1) mask |= Pattern(1) << free_pos[k];
      }
      view.patterns.push_back(mask);
    }
  }
  std::sort(view.patterns.begin(), view.patterns.end());
  return view;
}

namespace {

// Re-describes both operands over the union of their supports.
struct AlignedPair {
  std::vector<Coord> support;
  std::vector<Pattern> a;
  std::vector<Pattern> b;
};

AlignedPair align(const ClopenSet& a, const ClopenSet& b, std::size_t support_limit) {
  std::vector<Coord> combined;
  std::set_union(a.support().begin(), a.support().end(), b.support().begin(),
                 b.support().end(), std::back_inserter(combined));
  check_limit(combined.size(), support_limit);
  ExpandedView ea = expand_support(a, combined, support_limit);
  ExpandedView eb = expand_support(b, std::move(combined), support_limit);
  return AlignedPair{std::move(eb.support), std::move(ea.patterns),
                     std::move(eb.patterns)};
}

}  // namespace

ClopenSet union_of(const ClopenSet& a, const ClopenSet& b, std::size_t support_limit) {
  AlignedPair pair = align(a, b, support_limit);
  std::vector<Pattern> merged;
  std::set_union(pair.a.begin(), pair.a.end(), pair.b.begin(), pair.b.end(),
                 std::back_inserter(merged));
  return make_canonical(std::move(pair.support), std::move(merged));
}

ClopenSet intersection_of(const ClopenSet& a, const ClopenSet& b,
                          std::size_t support_limit) {
  AlignedPair pair = align(a, b, support_limit);
  std::vector<Pattern> merged;
  std::set_intersection(pair.a.begin(), pair.a.end(), pair.b.begin(), pair.b.end(),
                        std::back_inserter(merged));
  return make_canonical(std::move(pair.support), std::move(merged));
}

ClopenSet difference_of(const ClopenSet& a, const ClopenSet& b,
                        std::size_t support_limit) {
  AlignedPair pair = align(a, b, support_limit);
  std::vector<Pattern> merged;
  std::set_difference(pair.a.begin(), pair.a.end(), pair.b.begin(), pair.b.end(),
                      std::back_inserter(merged));
  return make_canonical(std::move(pair.support), std::move(merged));
}

ClopenSet complement_of(const ClopenSet& a, std::size_t support_limit) {
  check_limit(a.support().size(), support_limit);
  const std::uint64_t space = std::uint64_t(1) << a.support().size();
  std::vector<Pattern> rest;
  rest.reserve(static_cast<std::size_t>(space) - a.patterns().size());
  const std::vector<Pattern>& present = a.patterns();
  std::size_t i = 0;
  for (std::uint64_t m = 0; m < space; ++m) {
    if (i < present.size() && present[i] == m) {
      ++i;
    } else {
      rest.push_back(static_cast<Pattern>(m));
    }
  }
  return make_canonical(a.support(), std::move(rest));
}

FinPermutation FinPermutation::from_pairs(
    const std::vector<std::pair<Coord, Coord>>& pairs) {
  FinPermutation perm;
  for (const auto& [x, y] : pairs) {
    const auto [it, fresh] = perm.fwd_.emplace(x, y);
    if (!fresh && it->second != y) {
      throw InvalidInput("permutation maps coordinate " + std::to_string(x) +
                         " twice");
    }
  }
  for (auto it = perm.fwd_.begin(); it != perm.fwd_.end();) {
    it = it->first == it->second ? perm.fwd_.erase(it) : std::next(it);
  }
  std::vector<Coord> values;
  values.reserve(perm.fwd_.size());
  for (const auto& [x, y] : perm.fwd_) values.push_back(y);
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw InvalidInput("permutation image has a repeated coordinate");
  }
  std::vector<Coord> keys;
  keys.reserve(perm.fwd_.size());
  for (const auto& [x, y] : perm.fwd_) keys.push_back(x);
  if (keys != values) {
    throw InvalidInput("moved points must map onto themselves (finite bijection)");
  }
  return perm;
}

FinPermutation FinPermutation::transposition(Coord a, Coord b) {
  if (a == b) return FinPermutation();
  return from_pairs({{a, b}, {b, a}});
}

Coord FinPermutation::operator()(Coord c) const {
  const auto it = fwd_.find(c);
  return it == fwd_.end() ? c : it->second;
}

FinPermutation FinPermutation::inverse() const {
  FinPermutation inv;
  for (const auto& [x, y] : fwd_) inv.fwd_.emplace(y, x);
  return inv;
}

FinPermutation FinPermutation::after(const FinPermutation& first) const {
  std::vector<std::pair<Coord, Coord>> pairs;
  for (const auto& [x, y] : first.fwd_) pairs.emplace_back(x, (*this)(y));
  for (const auto& [x, y] : fwd_) {
    if (!first.fwd_.count(x)) pairs.emplace_back(x, y);
  }
  return from_pairs(pairs);
}

ClopenSet apply_permutation(const ClopenSet& set, const FinPermutation& perm) {
  const std::vector<Coord>& old_support = set.support();
  std::vector<std::pair<Coord, std::size_t>> relocated;
  relocated.reserve(old_support.size());
  for (std::size_t pos = 0; pos < old_support.size(); ++pos) {
    relocated.emplace_back(perm(old_support[pos]), pos);
  }
  std::sort(relocated.begin(), relocated.end());

  std::vector<Coord> new_support;
  new_support.reserve(relocated.size());
  for (const auto& [c, pos] : relocated) new_support.push_back(c);

  std::vector<Pattern> new_patterns;
  new_patterns.reserve(set.patterns().size());
  for (Pattern m : set.patterns()) {
    Pattern out = 0;
    for (std::size_t k = 0; k < relocated.size(); ++k) {
      if ((m >> relocated[k].second) & 1) out |= Pattern(1) << k;
    }
    new_patterns.push_back(out);
  }
  return make_canonical(std::move(new_support), std::move(new_patterns));
}

}  // namespace snzlab
