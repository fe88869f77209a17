#pragma once

/**
 * Dense univariate polynomials over Q in the variable t.
 *
 * Coefficients are stored by exponent; the leading coefficient is nonzero
 * unless the polynomial is zero, in which case the vector is empty and
 * degree() returns kZeroDegree.
 */

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffdio/rational.hpp"

namespace ffdio {

class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  Poly(const Rat& c);  // NOLINT(google-explicit-constructor): constants embed
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT
  explicit Poly(std::vector<Rat> coeffs);

  static Poly monomial(const Rat& c, unsigned degree);
  static Poly t() { return monomial(Rat(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  // Number of nonzero terms.
  std::size_t term_count() const;

  // Coefficient of t^i; zero beyond the degree.
  const Rat& coeff(std::size_t i) const;
  const Rat& leading() const;
  std::span<const Rat> coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(const Rat& c) const;
  Poly monic() const;
  Poly derivative() const;
  Poly pow(unsigned e) const;
  Rat eval(const Rat& x) const;
  // Multiplicity of t as a factor, i.e. the index of the lowest nonzero coefficient.
  unsigned trailing_zeros() const;
  // Multiplies by t^k.
  Poly shifted(unsigned k) const;

  friend bool operator==(const Poly& a, const Poly& b) = default;

  // Canonical text: decreasing exponents, e.g. "t^2-1/2*t+3".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Order used for deterministic sorting of irreducible factors and primes:
// by degree, then lexicographically on coefficients from t^0 upward.
std::strong_ordering compare_poly(const Poly& a, const Poly& b);

// Division with remainder over Q. Throws DivisionByZero when b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Exact quotient; throws DomainError when b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

// Monic gcd. Throws DomainError when both inputs are zero.
Poly poly_gcd(const Poly& a, const Poly& b);

// Largest v with d^v | a, for a != 0 and deg d >= 1.
unsigned multiplicity(const Poly& d, Poly a);

// Square-free decomposition (Yun): monic a = prod parts[i]^(i+1); parts are
// square-free and pairwise coprime, trailing ones may be 1.
std::vector<Poly> squarefree_decomposition(const Poly& a);

// Coefficient vector over Z of the primitive integer multiple of a with
// positive leading coefficient.
std::vector<Int> primitive_integer(const Poly& a);
Poly from_integer(std::span<const Int> coeffs);

}  // namespace ffdio
