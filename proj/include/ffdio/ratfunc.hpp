#pragma once

#include <string>
#include <string_view>

#include "ffdio/poly.hpp"

namespace ffdio {

// An element of K = Q(t), always in normal form: gcd(num, den) = 1, den
// monic; zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(Rat(1)) {}
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Rat(c)) {}                 // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Rat(1)) {}  // NOLINT
  // Throws DivisionByZero when den = 0.
  RatFunc(Poly num, Poly den);

  static RatFunc t() { return RatFunc(Poly::t()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  // Value of a constant element; DomainError otherwise.
  Rat constant_value() const;

  RatFunc operator-() const { return RatFunc(-num_, den_, Normalized{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const;
  // Integer powers; negative exponents require a nonzero base.
  RatFunc pow(long e) const;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  // Canonical text accepted by parse_ratfunc, e.g. "(t^2+1)/(t-1)".
  std::string to_string() const;

 private:
  struct Normalized {};
  RatFunc(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

// Parses the expression grammar (integers, t, + - * / ^, parentheses, unary
// minus) into normal form. Throws ParseError or DivisionByZero.
RatFunc parse_ratfunc(std::string_view text);

}  // namespace ffdio
