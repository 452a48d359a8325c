#pragma once

// Surface syntax for clopen sets.  Atoms are H({..},{..}), EMPTY and FULL;
// operators are '|' (union), '&' (intersection), '\' (difference) and the
// prefix '~' (complement), with precedence '~' > '&' > '\' > '|' and left
// associativity.  See docs/clopen-grammar.ebnf for the full grammar.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "snzlab/clopen.hpp"

namespace snzlab {

struct ClopenExpr;
using ClopenExprPtr = std::unique_ptr<ClopenExpr>;

struct ClopenExpr {
  enum class Kind { atom, empty, full, set_union, set_intersection, set_difference, set_complement };

  Kind kind;
  Cylinder atom;        // valid when kind == atom
  ClopenExprPtr left;   // operand (unary uses `left` only)
  ClopenExprPtr right;
};

// Parses an expression; throws ParseError with 1-based line/column on bad
// syntax and InvalidInput when an atom's coordinate lists overlap.
ClopenExprPtr parse_clopen(std::string_view text);

// Evaluates the AST through the cylinder-algebra operations.
ClopenSet eval_clopen(const ClopenExpr& expr,
                      std::size_t support_limit = kDefaultSupportLimit);

// parse + eval in one step.
ClopenSet eval_clopen_text(std::string_view text,
                           std::size_t support_limit = kDefaultSupportLimit);

// Deterministic canonical rendering: "EMPTY", "FULL", or the ' | '-joined
// list of full-support atoms, one per pattern in sorted order.  Distinct
// canonical sets always print differently.
std::string print_clopen(const ClopenSet& set);

}  // namespace snzlab
