#include "ffdio/expr.hpp"

#include <cctype>

namespace ffdio {

enum class Op { Num, VarT, VarA, Add, Sub, Mul, Div, Neg, Pow, FloorDiv, Ilog2 };

struct ExprNode {
  Op op;
  Int value;  // Num
  std::shared_ptr<const ExprNode> lhs, rhs;
  bool has_t = false;
  bool has_a = false;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

constexpr long kMaxExponent = 100000;

NodePtr make_num(Int v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Num;
  n->value = std::move(v);
  return n;
}

NodePtr make_var(Op op) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->has_t = op == Op::VarT;
  n->has_a = op == Op::VarA;
  return n;
}

NodePtr make_node(Op op, NodePtr l, NodePtr r = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->has_t = l->has_t || (r && r->has_t);
  n->has_a = l->has_a || (r && r->has_a);
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

Int integer_value(const RatFunc& v, const char* what) {
  if (!v.is_constant() || !is_integer(v.constant_value())) throw DomainError(std::string(what) + " must be an integer, got " + v.to_string());
  return v.constant_value().get_num();
}

RatFunc eval_node(const ExprNode& n, std::int64_t alpha) {
  switch (n.op) {
    case Op::Num:
      return RatFunc(Rat(n.value));
    case Op::VarT:
      return RatFunc::t();
    case Op::VarA:
      return RatFunc(Rat(static_cast<long>(alpha)));
    case Op::Add:
      return eval_node(*n.lhs, alpha) + eval_node(*n.rhs, alpha);
    case Op::Sub:
      return eval_node(*n.lhs, alpha) - eval_node(*n.rhs, alpha);
    case Op::Mul: {
      RatFunc l = eval_node(*n.lhs, alpha);
      if (l.is_zero()) return l;
      return l * eval_node(*n.rhs, alpha);
    }
    case Op::Div: {
      RatFunc d = eval_node(*n.rhs, alpha);
      if (d.is_zero()) throw DivisionByZero();
      return eval_node(*n.lhs, alpha) / d;
    }
    case Op::Neg:
      return -eval_node(*n.lhs, alpha);
    case Op::Pow: {
      Int e = integer_value(eval_node(*n.rhs, alpha), "exponent");
      if (abs(e) > kMaxExponent) throw DomainError("exponent " + e.get_str() + " exceeds the supported range");
      RatFunc base = eval_node(*n.lhs, alpha);
      if (e < 0 && base.is_zero()) throw DivisionByZero();
      return base.pow(e.get_si());
    }
    case Op::FloorDiv: {
      Int x = integer_value(eval_node(*n.lhs, alpha), "floor_div argument");
      Int y = integer_value(eval_node(*n.rhs, alpha), "floor_div argument");
      if (y == 0) throw DivisionByZero("floor_div by zero");
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      return RatFunc(Rat(q));
    }
    case Op::Ilog2: {
      Int x = integer_value(eval_node(*n.lhs, alpha), "ilog2 argument");
      if (x <= 0) throw DomainError("ilog2 of non-positive " + x.get_str());
      return RatFunc(Rat(static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2) - 1)));
    }
  }
  throw DomainError("corrupt expression node");
}

std::string node_string(const ExprNode& n) {
  switch (n.op) {
    case Op::Num:
      return n.value.get_str();
    case Op::VarT:
      return "t";
    case Op::VarA:
      return "a";
    case Op::Add:
      return "(" + node_string(*n.lhs) + "+" + node_string(*n.rhs) + ")";
    case Op::Sub:
      return "(" + node_string(*n.lhs) + "-" + node_string(*n.rhs) + ")";
    case Op::Mul:
      return "(" + node_string(*n.lhs) + "*" + node_string(*n.rhs) + ")";
    case Op::Div:
      return "(" + node_string(*n.lhs) + "/" + node_string(*n.rhs) + ")";
    case Op::Neg:
      return "(-" + node_string(*n.lhs) + ")";
    case Op::Pow:
      return "(" + node_string(*n.lhs) + "^" + node_string(*n.rhs) + ")";
    case Op::FloorDiv:
      return "floor_div(" + node_string(*n.lhs) + "," + node_string(*n.rhs) + ")";
    case Op::Ilog2:
      return "ilog2(" + node_string(*n.lhs) + ")";
  }
  return "?";
}

}  // namespace

class ExprParser {
 public:
  ExprParser(std::string_view text, bool allow_index) : s_(text), allow_index_(allow_index) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(pos_ < s_.size() ? "expected '" + std::string(1, c) + "'" : "unexpected end of input, expected '" + std::string(1, c) + "'");
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (accept('+'))
        l = make_node(Op::Add, l, term());
      else if (accept('-'))
        l = make_node(Op::Sub, l, term());
      else
        return l;
    }
  }

  NodePtr term() {
    NodePtr l = unary();
    for (;;) {
      if (accept('*'))
        l = make_node(Op::Mul, l, unary());
      else if (accept('/'))
        l = make_node(Op::Div, l, unary());
      else
        return l;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Op::Neg, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      NodePtr e = unary();
      if (e->has_t) throw ParseError(at, "exponent must not depend on t");
      return make_node(Op::Pow, base, e);
    }
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return make_num(Int(std::string(s_.substr(start, pos_ - start))));
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "t") return make_var(Op::VarT);
      if (allow_index_) {
        if (name == "a") return make_var(Op::VarA);
        if (name == "floor_div") {
          expect('(');
          NodePtr x = expr();
          expect(',');
          NodePtr y = expr();
          expect(')');
          return make_node(Op::FloorDiv, x, y);
        }
        if (name == "ilog2") {
          expect('(');
          NodePtr x = expr();
          expect(')');
          return make_node(Op::Ilog2, x);
        }
      }
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  bool allow_index_;
};

Expr::Expr() : node_(make_num(Int(0))) {}

Expr Expr::parse(std::string_view text, bool allow_index) { return Expr(ExprParser(text, allow_index).parse()); }

Expr Expr::constant(const Rat& c) {
  if (is_integer(c)) {
    if (c < 0) return Expr(make_node(Op::Neg, make_num(-c.get_num())));
    return Expr(make_num(c.get_num()));
  }
  NodePtr n = make_node(Op::Div, make_num(abs(c.get_num())), make_num(c.get_den()));
  if (c < 0) n = make_node(Op::Neg, n);
  return Expr(n);
}

Expr Expr::ratio(const Expr& num, const Expr& den) { return Expr(make_node(Op::Div, num.node_, den.node_)); }

Expr Expr::product(const Expr& a, const Expr& b) { return Expr(make_node(Op::Mul, a.node_, b.node_)); }

RatFunc Expr::eval(std::int64_t alpha) const { return eval_node(*node_, alpha); }

bool Expr::uses_index() const { return node_->has_a; }
bool Expr::uses_t() const { return node_->has_t; }

std::optional<Rat> Expr::literal() const {
  if (node_->op == Op::Num) return Rat(node_->value);
  if (node_->op == Op::Neg && node_->lhs->op == Op::Num) return Rat(-node_->lhs->value);
  return std::nullopt;
}

std::string Expr::to_string() const { return node_string(*node_); }

RatFunc Sequence::operator()(std::int64_t alpha) const {
  if (alpha < alpha_min_) throw EvalError(alpha, "index below alpha_min=" + std::to_string(alpha_min_));
  try {
    return expr_.eval(alpha);
  } catch (const EvalError&) {
    throw;
  } catch (const Error& e) {
    throw EvalError(alpha, e.what());
  }
}

RatFunc parse_ratfunc(std::string_view text) { return Expr::parse(text, false).eval(); }

}  // namespace ffdio
