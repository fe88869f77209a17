#pragma once

/**
 * Prime divisors of P^1 over Q: monic irreducible polynomials and the place
 * at infinity. ord_p, divisors of elements of K and their degree.
 */

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffdio/ratfunc.hpp"

namespace ffdio {

class PrimeDivisor {
 public:
  // Checks that q is irreducible over Q; the stored polynomial is q made monic.
  static PrimeDivisor finite(const Poly& q);
  static PrimeDivisor infinity() { return PrimeDivisor(); }
  // A polynomial expression, or the literal "inf".
  static PrimeDivisor parse(std::string_view text);

  bool is_infinite() const { return !poly_.has_value(); }
  // Finite places only.
  const Poly& poly() const;
  int degree() const { return poly_ ? poly_->degree() : 1; }

  std::string to_string() const { return poly_ ? poly_->to_string() : "inf"; }

  // Finite places by (degree, coefficients), infinity last.
  friend std::strong_ordering operator<=>(const PrimeDivisor& a, const PrimeDivisor& b);
  friend bool operator==(const PrimeDivisor& a, const PrimeDivisor& b) { return (a <=> b) == 0; }

 private:
  PrimeDivisor() = default;
  explicit PrimeDivisor(Poly p) : poly_(std::move(p)) {}
  std::optional<Poly> poly_;
  friend PrimeDivisor unchecked_prime(Poly);
};

// For callers that already know q is monic irreducible (factorization output).
PrimeDivisor unchecked_prime(Poly q);

int degree(const PrimeDivisor& p);

// Order of x at p; DomainError for x = 0.
long ord_at(const RatFunc& x, const PrimeDivisor& p);
// Order of a nonzero polynomial at a finite place or at infinity.
long ord_at(const Poly& x, const PrimeDivisor& p);

struct DivisorTerm {
  PrimeDivisor place;
  long multiplicity;
  friend bool operator==(const DivisorTerm&, const DivisorTerm&) = default;
};

// Finite support sorted by place order; multiplicities nonzero.
struct Divisor {
  std::vector<DivisorTerm> terms;
  long degree() const;
  std::string to_string() const;
};

// The divisor (x) = (x)_0 - (x)_inf, from the factorizations of num and den.
Divisor divisor_of(const RatFunc& x);

// sum_p ord_p(x) * deg p; always 0 for x != 0.
long check_sum_formula(const RatFunc& x);

}  // namespace ffdio
