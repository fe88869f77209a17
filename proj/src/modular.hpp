#pragma once

// Arithmetic in Z/pZ and (Z/pZ)[t] for word-size primes p < 2^62.

#include <cstdint>
#include <random>
#include <vector>

#include "ffdio/rational.hpp"

namespace ffdio::detail {

using u64 = std::uint64_t;
using PPoly = std::vector<u64>;  // by exponent, no trailing zeros

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);  // a != 0 mod p

// Residue of an integer / rational. rat_mod reports false when the denominator vanishes mod p.
u64 int_mod(const Int& z, u64 p);
bool rat_mod(const Rat& r, u64 p, u64& out);

bool is_prime_u64(u64 n);

inline void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int pdeg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

PPoly pmul(const PPoly& a, const PPoly& b, u64 p);
PPoly psub(const PPoly& a, const PPoly& b, u64 p);
// Remainder and quotient of a by b (b != 0).
void pdivmod(const PPoly& a, const PPoly& b, u64 p, PPoly& q, PPoly& r);
PPoly prem(const PPoly& a, const PPoly& b, u64 p);
PPoly pmonic(const PPoly& a, u64 p);
PPoly pgcd(PPoly a, PPoly b, u64 p);  // monic
// s*a + t*b = g (monic gcd).
PPoly pxgcd(const PPoly& a, const PPoly& b, u64 p, PPoly& s, PPoly& t);
PPoly pderiv(const PPoly& a, u64 p);
// base^e mod m.
PPoly ppowmod(PPoly base, u64 e, const PPoly& m, u64 p);
u64 peval(const PPoly& a, u64 x, u64 p);

// Monic irreducible factors of a monic square-free polynomial mod an odd prime p.
std::vector<PPoly> factor_squarefree_mod_p(const PPoly& f, u64 p, std::mt19937_64& rng);

// Rank of a dense matrix over Z/pZ (destroys the input).
std::size_t rank_mod_p(std::vector<std::vector<u64>>& m, u64 p);

}  // namespace ffdio::detail
