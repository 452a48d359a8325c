#include "snzlab/clopen_lang.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace snzlab {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Consumes `c` if it is next; returns whether it did.
  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) {
      fail(std::string("expected ") + what);
    }
  }

  // Matches a keyword made of letters ("EMPTY", "FULL", "H").
  bool accept_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_).substr(0, word.size()) != word) return false;
    const std::size_t after = pos_ + word.size();
    if (after < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[after]))) {
      return false;
    }
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  Coord number() {
    skip_space();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a coordinate (nonnegative integer)");
    }
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<Coord>::max()) {
        fail("coordinate literal too large");
      }
      advance();
    }
    return static_cast<Coord>(value);
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    std::string found = pos_ < text_.size()
                            ? std::string("'") + text_[pos_] + "'"
                            : std::string("end of input");
    throw ParseError(message + ", found " + found, line_, col_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

ClopenExprPtr make_node(ClopenExpr::Kind kind, ClopenExprPtr left = nullptr,
                        ClopenExprPtr right = nullptr) {
  auto node = std::make_unique<ClopenExpr>();
  node->kind = kind;
  node->left = std::move(left);
  node->right = std::move(right);
  return node;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : scan_(text) {}

  ClopenExprPtr run() {
    ClopenExprPtr expr = parse_union();
    if (!scan_.at_end()) scan_.fail("unexpected trailing input");
    return expr;
  }

 private:
  ClopenExprPtr parse_union() {
    ClopenExprPtr node = parse_difference();
    while (scan_.accept('|')) {
      node = make_node(ClopenExpr::Kind::set_union, std::move(node),
                       parse_difference());
    }
    return node;
  }

  ClopenExprPtr parse_difference() {
    ClopenExprPtr node = parse_intersection();
    while (scan_.accept('\\')) {
      node = make_node(ClopenExpr::Kind::set_difference, std::move(node),
                       parse_intersection());
    }
    return node;
  }

  ClopenExprPtr parse_intersection() {
    ClopenExprPtr node = parse_unary();
    while (scan_.accept('&')) {
      node = make_node(ClopenExpr::Kind::set_intersection, std::move(node),
                       parse_unary());
    }
    return node;
  }

  ClopenExprPtr parse_unary() {
    if (scan_.accept('~')) {
      return make_node(ClopenExpr::Kind::set_complement, parse_unary());
    }
    return parse_atom();
  }

  ClopenExprPtr parse_atom() {
    if (scan_.accept('(')) {
      ClopenExprPtr inner = parse_union();
      scan_.expect(')', "')'");
      return inner;
    }
    if (scan_.accept_word("EMPTY")) return make_node(ClopenExpr::Kind::empty);
    if (scan_.accept_word("FULL")) return make_node(ClopenExpr::Kind::full);
    if (scan_.accept_word("H")) {
      scan_.expect('(', "'(' after H");
      Cylinder cyl;
      cyl.zeros = coord_list();
      scan_.expect(',', "',' between coordinate sets");
      cyl.ones = coord_list();
      scan_.expect(')', "')' closing H");
      auto node = make_node(ClopenExpr::Kind::atom);
      node->atom = std::move(cyl);
      return node;
    }
    scan_.fail("expected an atom (H(..), EMPTY, FULL or parenthesized expression)");
  }

  std::vector<Coord> coord_list() {
    scan_.expect('{', "'{'");
    std::vector<Coord> coords;
    if (!scan_.accept('}')) {
      coords.push_back(scan_.number());
      while (scan_.accept(',')) coords.push_back(scan_.number());
      scan_.expect('}', "'}' or ','");
    }
    return coords;
  }

  Scanner scan_;
};

}  // namespace

ClopenExprPtr parse_clopen(std::string_view text) { return Parser(text).run(); }

ClopenSet eval_clopen(const ClopenExpr& expr, std::size_t support_limit) {
  switch (expr.kind) {
    case ClopenExpr::Kind::atom:
      return ClopenSet::from_cylinder(expr.atom, support_limit);
    case ClopenExpr::Kind::empty:
      return ClopenSet::empty_set();
    case ClopenExpr::Kind::full:
      return ClopenSet::full_space();
    case ClopenExpr::Kind::set_union:
      return union_of(eval_clopen(*expr.left, support_limit),
                      eval_clopen(*expr.right, support_limit), support_limit);
    case ClopenExpr::Kind::set_intersection:
      return intersection_of(eval_clopen(*expr.left, support_limit),
                             eval_clopen(*expr.right, support_limit),
                             support_limit);
    case ClopenExpr::Kind::set_difference:
      return difference_of(eval_clopen(*expr.left, support_limit),
                           eval_clopen(*expr.right, support_limit),
                           support_limit);
    case ClopenExpr::Kind::set_complement:
      return complement_of(eval_clopen(*expr.left, support_limit), support_limit);
  }
  throw InvalidInput("corrupt expression node");
}

ClopenSet eval_clopen_text(std::string_view text, std::size_t support_limit) {
  return eval_clopen(*parse_clopen(text), support_limit);
}

std::string print_clopen(const ClopenSet& set) {
  if (set.is_empty()) return "EMPTY";
  if (set.is_full()) return "FULL";
  std::ostringstream out;
  bool first_atom = true;
  for (Pattern m : set.patterns()) {
    if (!first_atom) out << " | ";
    first_atom = false;
    out << "H({";
    bool first = true;
    for (std::size_t i = 0; i < set.support().size(); ++i) {
      if ((m >> i) & 1) continue;
      out << (first ? "" : ",") << set.support()[i];
      first = false;
    }
    out << "},{";
    first = true;
    for (std::size_t i = 0; i < set.support().size(); ++i) {
      if (!((m >> i) & 1)) continue;
      out << (first ? "" : ",") << set.support()[i];
      first = false;
    }
    out << "})";
  }
  return out.str();
}

}  // namespace snzlab
