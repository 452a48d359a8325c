#pragma once

// Non-extendability demonstrations: the finite-cofinite charge that no
// total extension can keep integer-valued, the chain of charge-comparable
// sets indexed by an explicit enumeration of the rationals, the forced
// zero-charge witness for any assumed value on the evens, and the
// pigeonhole obstruction for prescribed values on a chain.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snzlab/numeric.hpp"

namespace snzlab {

// A subset of N = {1, 2, ...} that is finite or has finite complement.
struct FinCofSet {
  bool cofinite = false;
  // Members when finite; the complement when cofinite.  Sorted, distinct.
  std::vector<std::uint64_t> elements;

  static FinCofSet finite(std::vector<std::uint64_t> members);
  static FinCofSet cofinite_excluding(std::vector<std::uint64_t> missing);
};

// mu(A) = #A for finite A and -1 - #(complement) for cofinite A; additive,
// permutation invariant, and mu(N) = -1.
BigInt fincof_charge(const FinCofSet& set);

FinCofSet fincof_complement(const FinCofSet& set);
FinCofSet fincof_union(const FinCofSet& a, const FinCofSet& b);
FinCofSet fincof_intersection(const FinCofSet& a, const FinCofSet& b);
bool fincof_disjoint(const FinCofSet& a, const FinCofSet& b);

// --- Enumeration of Q ------------------------------------------------------
// q_1 = 0 and, for m >= 1, q_{2m} = c_m and q_{2m+1} = -c_m where c_m is the
// m-th positive rational in breadth-first Calkin-Wilf order.

// c_n for n >= 1 (c_1 = 1, c_2 = 1/2, c_3 = 2, c_4 = 1/3, ...).
BigRat calkin_wilf_value(const BigInt& n);
// Inverse: the index of a positive rational (exact, via the tree path).
BigInt calkin_wilf_index(const BigRat& value);

// q_i for i >= 1, and its inverse over all of Q.
BigRat rational_at(const BigInt& i);
BigInt rational_index(const BigRat& value);

// Streams q_1, q_2, ... without recomputing tree paths (Newman's recurrence).
class RationalEnumerator {
 public:
  BigRat next();
  const BigInt& index() const { return next_index_; }  // index of next()

 private:
  BigInt next_index_ = 1;
  BigRat current_ = 1;  // c_m while emitting the signed pair
};

// Indices i in [1, n] with q_i < r: a finite window onto the set A_r whose
// charges would order as the rationals do, if a suitable charge existed.
std::vector<std::uint64_t> chain_set(const BigRat& r, std::uint64_t n);

// Smallest index i with r <= q_i < r_prime (searched up to `limit`); such an
// i witnesses the strict inclusion A_r < A_{r'}.
std::optional<BigInt> chain_witness(const BigRat& r, const BigRat& r_prime,
                                    const BigInt& limit);

// --- Forced zero charge on a coinfinite set --------------------------------

// Assume a finitely additive, permutation-invariant, Z-valued extension
// gives the evens E the value e.  Removing the right number of elements
// from E (or from the odds O when e forces the budget there) leaves an
// infinite set whose charge is forced to 0 - contradicting strictness.
struct EvensWitness {
  BigInt assumed_even_charge;        // e
  bool base_is_evens = true;         // which side pays: E or O
  BigInt base_charge;                // mu(base) forced by e and mu(N) = -1
  BigInt removed_count;              // elements removed from the base
  std::vector<std::uint64_t> removed_head;  // first few removed elements
  std::string derivation;            // the additivity ledger, line by line
};

EvensWitness evens_extension_witness(const BigInt& e);

// --- Pigeonhole obstruction -------------------------------------------------

// First (lexicographic) pair l < m with values[l-1] = values[m-1] mod modulus;
// indices are 1-based.  Requires modulus >= 1 and at least modulus+1 values.
std::pair<std::size_t, std::size_t> pigeonhole_pair(
    const std::vector<BigInt>& values, const BigInt& modulus);

// Prescribing distinct values v_1..v_{|a|+1} on a strictly decreasing chain
// of sets E_1 > E_2 > ... forces, between the pigeonhole pair, a set F with
// mu(F) = p*a for an integer p >= 1, i.e. a nonempty F whose charge is a
// positive multiple of a - the obstruction witness.
struct Obstruction {
  BigInt a;
  std::vector<BigInt> values;
  std::size_t l = 0;             // 1-based pigeonhole pair, l < m
  std::size_t m = 0;
  BigInt p;                      // >= 1, with mu(F) = p * a
  bool chain_descending = true;  // E_k = multiples of 2^(k-1), else reversed
  std::string f_description;     // membership predicate of F
  BigInt f_charge;               // p * a
  std::vector<BigInt> g_head;    // first elements of the sub-chain G-split
  std::string narrative;
};

Obstruction build_obstruction(const BigInt& a, const std::vector<BigInt>& values);

}  // namespace snzlab
