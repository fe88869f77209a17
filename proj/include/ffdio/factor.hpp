#pragma once

#include <vector>

#include "ffdio/poly.hpp"

namespace ffdio {

struct FactorPower {
  Poly factor;  // monic, irreducible over Q
  unsigned multiplicity;
  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

// unit * prod factor^multiplicity reproduces the input exactly.
struct Factorization {
  Rat unit;
  std::vector<FactorPower> factors;  // sorted by compare_poly
  Poly expand() const;
};

// Complete factorization over Q. Square-free decomposition, then for each
// part a factorization modulo a word-size prime, Hensel lifting and
// Zassenhaus recombination. The result is checked by exact multiplication.
// Throws DomainError for the zero polynomial.
Factorization factorize(const Poly& p);

bool is_irreducible(const Poly& p);

}  // namespace ffdio
