#include "ffdio/ratfunc.hpp"

namespace ffdio {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  if (den.degree() > 0) {
    Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  }
  Rat lc = den.leading();
  if (lc != 1) {
    Rat inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Rat RatFunc::constant_value() const {
  if (!is_constant()) throw DomainError("not a constant: " + to_string());
  return num_.coeff(0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_, Poly(Rat(1)), RatFunc::Normalized{});
  // Cross-cancel so that the products are already reduced.
  Poly g1 = poly_gcd(a.num_, b.den_);
  Poly g2 = poly_gcd(b.num_, a.den_);
  Poly n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
  Poly d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
  Rat lc = d.leading();
  if (lc != 1) {
    n = n.scaled(1 / lc);
    d = d.scaled(1 / lc);
  }
  return RatFunc(std::move(n), std::move(d), RatFunc::Normalized{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Normalized{});
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (den_.term_count() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace ffdio
