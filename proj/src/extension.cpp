#include "snzlab/extension.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace snzlab {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::vector<std::uint64_t> normalize_members(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.front() == 0) {
    throw InvalidInput("finite-cofinite sets live inside N = {1, 2, ...}");
  }
  return v;
}

std::vector<std::uint64_t> merged(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> common(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> removed(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

FinCofSet FinCofSet::finite(std::vector<std::uint64_t> members) {
  FinCofSet set;
  set.cofinite = false;
  set.elements = normalize_members(std::move(members));
  return set;
}

FinCofSet FinCofSet::cofinite_excluding(std::vector<std::uint64_t> missing) {
  FinCofSet set;
  set.cofinite = true;
  set.elements = normalize_members(std::move(missing));
  return set;
}

BigInt fincof_charge(const FinCofSet& set) {
  if (set.cofinite) return BigInt(-1) - BigInt(set.elements.size());
  return BigInt(set.elements.size());
}

FinCofSet fincof_complement(const FinCofSet& set) {
  FinCofSet out = set;
  out.cofinite = !set.cofinite;
  return out;
}

FinCofSet fincof_union(const FinCofSet& a, const FinCofSet& b) {
  if (!a.cofinite && !b.cofinite) return FinCofSet::finite(merged(a.elements, b.elements));
  if (a.cofinite && b.cofinite) {
    return FinCofSet::cofinite_excluding(common(a.elements, b.elements));
  }
  const FinCofSet& fin = a.cofinite ? b : a;
  const FinCofSet& cof = a.cofinite ? a : b;
  return FinCofSet::cofinite_excluding(removed(cof.elements, fin.elements));
}

FinCofSet fincof_intersection(const FinCofSet& a, const FinCofSet& b) {
  if (!a.cofinite && !b.cofinite) return FinCofSet::finite(common(a.elements, b.elements));
  if (a.cofinite && b.cofinite) {
    return FinCofSet::cofinite_excluding(merged(a.elements, b.elements));
  }
  const FinCofSet& fin = a.cofinite ? b : a;
  const FinCofSet& cof = a.cofinite ? a : b;
  return FinCofSet::finite(removed(fin.elements, cof.elements));
}

bool fincof_disjoint(const FinCofSet& a, const FinCofSet& b) {
  const FinCofSet both = fincof_intersection(a, b);
  return !both.cofinite && both.elements.empty();
}

// --- Rational enumeration ---------------------------------------------------

BigRat calkin_wilf_value(const BigInt& n) {
  if (n < 1) throw InvalidInput("Calkin-Wilf index starts at 1");
  const std::size_t bits = bit_length(n);
  BigInt num = 1, den = 1;
  for (std::size_t pos = bits - 1; pos-- > 0;) {
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(pos))) {
      num += den;  // right child (a+b)/b
    } else {
      den += num;  // left child a/(a+b)
    }
  }
  return BigRat(num, den);
}

BigInt calkin_wilf_index(const BigRat& value) {
  if (value <= 0) throw InvalidInput("Calkin-Wilf enumerates positive rationals");
  BigInt a = numerator(value);
  BigInt b = denominator(value);
  // Walk to the root with run-length steps (continued-fraction quotients);
  // bits are collected leaf-to-root.
  std::vector<std::pair<bool, BigInt>> runs;
  while (a != 1 || b != 1) {
    if (a > b) {
      const BigInt q = (a - 1) / b;
      runs.emplace_back(true, q);
      a -= q * b;
    } else {
      const BigInt q = (b - 1) / a;
      runs.emplace_back(false, q);
      b -= q * a;
    }
  }
  BigInt index = 1;
  for (auto run = runs.rbegin(); run != runs.rend(); ++run) {
    for (BigInt i = 0; i < run->second; ++i) {
      index <<= 1;
      if (run->first) index |= 1;
    }
  }
  return index;
}

BigRat rational_at(const BigInt& i) {
  if (i < 1) throw InvalidInput("rational enumeration starts at index 1");
  if (i == 1) return BigRat(0);
  const BigRat value = calkin_wilf_value(i / 2);
  return (i & 1) != 0 ? -value : value;
}

BigInt rational_index(const BigRat& value) {
  if (value == 0) return BigInt(1);
  if (value > 0) return 2 * calkin_wilf_index(value);
  return 2 * calkin_wilf_index(-value) + 1;
}

BigRat RationalEnumerator::next() {
  BigRat out;
  if (next_index_ == 1) {
    out = 0;
  } else if ((next_index_ & 1) == 0) {
    out = current_;
  } else {
    out = -current_;
    // Newman's successor for the positive Calkin-Wilf stream.
    const BigInt whole = numerator(current_) / denominator(current_);
    current_ = 1 / (2 * BigRat(whole) - current_ + 1);
  }
  ++next_index_;
  return out;
}

std::vector<std::uint64_t> chain_set(const BigRat& r, std::uint64_t n) {
  if (n < 1) throw InvalidInput("chain truncation must be >= 1");
  if (n > (std::uint64_t(1) << 24)) {
    throw InvalidInput("chain truncation too large to enumerate");
  }
  std::vector<std::uint64_t> indices;
  RationalEnumerator stream;
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (stream.next() < r) indices.push_back(i);
  }
  return indices;
}

std::optional<BigInt> chain_witness(const BigRat& r, const BigRat& r_prime,
                                    const BigInt& limit) {
  if (!(r < r_prime)) throw InvalidInput("chain witness needs r < r'");
  const BigInt cap = std::min(limit, BigInt(1) << 24);
  RationalEnumerator stream;
  for (BigInt i = 1; i <= cap; ++i) {
    const BigRat q = stream.next();
    if (r <= q && q < r_prime) return i;
  }
  return std::nullopt;
}

// --- Evens witness ----------------------------------------------------------

EvensWitness evens_extension_witness(const BigInt& e) {
  EvensWitness witness;
  witness.assumed_even_charge = e;
  witness.base_is_evens = e >= 0;
  witness.base_charge = witness.base_is_evens ? e : BigInt(-1) - e;
  witness.removed_count = witness.base_charge;  // pay the charge down to 0

  const std::uint64_t head =
      witness.removed_count > 16 ? 16
                                 : witness.removed_count.convert_to<std::uint64_t>();
  for (std::uint64_t k = 1; k <= head; ++k) {
    witness.removed_head.push_back(witness.base_is_evens ? 2 * k : 2 * k - 1);
  }

  const std::string base_name = witness.base_is_evens ? "E" : "O";
  std::ostringstream text;
  text << "mu(N) = -1 (N is cofinite with empty complement).\n"
       << "Assume a finitely additive Z-valued extension with mu(E) = "
       << to_decimal(e) << ".\n"
       << "Additivity over N = E + O forces mu(O) = -1 - mu(E) = "
       << to_decimal(BigInt(-1) - e) << ".\n"
       << "Take the base " << base_name << " with mu(" << base_name
       << ") = " << to_decimal(witness.base_charge) << " >= 0.\n"
       << "Let S be the first " << to_decimal(witness.removed_count)
       << " elements of " << base_name
       << "; finite sets keep their cardinality, so mu(S) = "
       << to_decimal(witness.removed_count) << ".\n"
       << "Then mu(" << base_name << " \\ S) = "
       << to_decimal(witness.base_charge) << " - "
       << to_decimal(witness.removed_count) << " = 0, while " << base_name
       << " \\ S is infinite (and coinfinite): strict nonzeroness fails.";
  witness.derivation = text.str();
  return witness;
}

// --- Pigeonhole obstruction ---------------------------------------------------

std::pair<std::size_t, std::size_t> pigeonhole_pair(
    const std::vector<BigInt>& values, const BigInt& modulus) {
  if (modulus < 1) throw InvalidInput("pigeonhole modulus must be >= 1");
  if (BigInt(values.size()) < modulus + 1) {
    throw InvalidInput("pigeonhole needs at least modulus+1 values");
  }
  // Occurrence lists per residue; the answer is the first index whose
  // residue repeats, paired with its next occurrence (lexicographic least).
  std::map<BigInt, std::vector<std::size_t>> occurrences;
  for (std::size_t i = 0; i < values.size(); ++i) {
    BigInt residue = values[i] % modulus;
    if (residue < 0) residue += modulus;
    occurrences[residue].push_back(i + 1);
  }
  for (std::size_t i = 1; i <= values.size(); ++i) {
    BigInt residue = values[i - 1] % modulus;
    if (residue < 0) residue += modulus;
    const std::vector<std::size_t>& list = occurrences[residue];
    const auto it = std::upper_bound(list.begin(), list.end(), i);
    if (it != list.end()) return {i, *it};
  }
  throw InvalidInput("no residue collision found (values not distinct mod 1?)");
}

Obstruction build_obstruction(const BigInt& a, const std::vector<BigInt>& values) {
  if (a == 0) throw InvalidInput("the obstruction modulus a must be nonzero");
  const BigInt mod = abs(a);
  if (mod > 1'000'000) {
    throw InvalidInput("a is impractically large for an explicit value list");
  }
  const std::size_t n = mod.convert_to<std::size_t>() + 1;
  if (values.size() != n) {
    throw InvalidInput("need exactly |a|+1 prescribed values, got " +
                       std::to_string(values.size()));
  }
  {
    std::vector<BigInt> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("prescribed values must be pairwise distinct");
    }
  }

  Obstruction ob;
  ob.a = a;
  ob.values = values;
  std::tie(ob.l, ob.m) = pigeonhole_pair(values, mod);

  const BigInt difference = values[ob.l - 1] - values[ob.m - 1];
  const BigInt ratio = difference / a;  // exact: a | difference
  // Orient the chain so the charge of the outer-minus-inner set is +p*a.
  ob.chain_descending = ratio >= 1;
  ob.p = ob.chain_descending ? ratio : -ratio;

  if (n > 60) {
    throw InvalidInput("chain too deep for explicit 2^k index families");
  }
  std::size_t outer;  // the chain-larger set of the pair
  std::size_t inner;
  std::uint64_t outer_step;  // E_outer collects A_i with i in multiples of this
  std::uint64_t inner_step;
  if (ob.chain_descending) {
    // E_k = union of A_i over i in multiples of 2^(k-1): E_1 > E_2 > ...
    outer = ob.l;
    inner = ob.m;
    outer_step = std::uint64_t(1) << (ob.l - 1);
    inner_step = std::uint64_t(1) << (ob.m - 1);
  } else {
    // Reversed nesting: E_k collects multiples of 2^(n-k): E_1 < E_2 < ...
    outer = ob.m;
    inner = ob.l;
    outer_step = std::uint64_t(1) << (n - ob.m);
    inner_step = std::uint64_t(1) << (n - ob.l);
  }
  ob.f_charge = ob.p * a;

  std::ostringstream fdesc;
  fdesc << "F = E_" << outer << " \\ E_" << inner
        << " = union of A_i over indices i that are multiples of " << outer_step
        << " but not of " << inner_step;
  ob.f_description = fdesc.str();

  // G = the union of the first p of those A_i (head capped for display).
  const BigInt head_count = ob.p > 12 ? BigInt(12) : ob.p;
  for (BigInt taken = 0, i = outer_step; taken < head_count; i += outer_step) {
    if (i % inner_step == 0) continue;
    ob.g_head.push_back(BigInt(i));
    ++taken;
  }

  std::ostringstream text;
  text << "Prescribe mu(E_k) = v_k on the chain E_1.." << n
       << " built over disjoint infinite sets A_1, A_2, ... with mu(A_i) = "
       << to_decimal(a) << " each.\n"
       << "Pigeonhole over the " << to_decimal(mod)
       << " residue classes: v_" << ob.l << " = " << to_decimal(values[ob.l - 1])
       << " and v_" << ob.m << " = " << to_decimal(values[ob.m - 1])
       << " agree mod " << to_decimal(mod) << ".\n"
       << ob.f_description << ", so mu(F) = v_" << outer << " - v_" << inner
       << " = " << to_decimal(ob.f_charge) << " = p*a with p = "
       << to_decimal(ob.p) << ".\n"
       << "Let G be the union of the first p of those A_i: mu(G) = p*a = "
       << to_decimal(ob.f_charge) << " as well.\n"
       << "F \\ G still contains infinitely many A_i, so F != G, yet "
       << "mu(F (+) G) = mu(F) - mu(G) = 0 on a nonempty set: "
       << "no Z-valued strictly nonzero extension can prescribe these values.";
  ob.narrative = text.str();
  return ob;
}

}  // namespace snzlab
