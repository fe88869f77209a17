#pragma once

/**
 * Index expressions: closed-form maps alpha -> K used to describe moving
 * coefficients and point sequences.
 *
 * Grammar (whitespace ignored):
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' unary)?
 *   primary := INTEGER | 't' | 'a' | name '(' expr (',' expr)* ')' | '(' expr ')'
 *
 * with builtins floor_div(x, y) and ilog2(x) on integer values. Exponents
 * must not mention t and must evaluate to an integer.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffdio/ratfunc.hpp"

namespace ffdio {

struct ExprNode;

class Expr {
 public:
  Expr();  // the constant 0
  // Parses text; when allow_index is false the variable `a` and the
  // builtins are rejected (plain rational-function grammar).
  static Expr parse(std::string_view text, bool allow_index = true);
  static Expr constant(const Rat& c);
  static Expr ratio(const Expr& num, const Expr& den);
  static Expr product(const Expr& a, const Expr& b);

  // Evaluates at the index alpha (ignored when the expression has no `a`).
  // Throws DivisionByZero / DomainError on per-alpha failures.
  RatFunc eval(std::int64_t alpha) const;
  RatFunc eval() const { return eval(0); }

  bool uses_index() const;
  bool uses_t() const;
  // Literal constant value, when the tree is a single number.
  std::optional<Rat> literal() const;

  // Fully parenthesized canonical form; stable across parses of equivalent spacing.
  std::string to_string() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
  friend class ExprParser;
};

// A map alpha -> K defined for alpha >= alpha_min.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(Expr e, std::int64_t alpha_min = INT64_MIN) : expr_(std::move(e)), alpha_min_(alpha_min) {}
  static Sequence parse(std::string_view text, std::int64_t alpha_min = INT64_MIN) {
    return Sequence(Expr::parse(text), alpha_min);
  }
  static Sequence constant(const Rat& c) { return Sequence(Expr::constant(c)); }

  // Throws EvalError carrying alpha on any failure.
  RatFunc operator()(std::int64_t alpha) const;

  const Expr& expr() const { return expr_; }
  std::int64_t alpha_min() const { return alpha_min_; }
  std::string to_string() const { return expr_.to_string(); }

 private:
  Expr expr_;
  std::int64_t alpha_min_ = INT64_MIN;
};

}  // namespace ffdio
