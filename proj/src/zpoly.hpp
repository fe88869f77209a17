#pragma once

// Integer polynomial helpers shared by gcd and factorization. Coefficient
// vectors are indexed by exponent with no trailing zeros.

#include <vector>

#include "ffdio/rational.hpp"

namespace ffdio::detail {

using ZPoly = std::vector<Int>;

inline void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Int zcontent(const ZPoly& a) {
  Int g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides by the content and makes the leading coefficient positive.
inline void zprimitive(ZPoly& a) {
  ztrim(a);
  if (a.empty()) return;
  Int g = zcontent(a);
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline ZPoly zprem(ZPoly a, const ZPoly& b) {
  const int db = zdeg(b);
  const Int& lb = b.back();
  while (zdeg(a) >= db && !a.empty()) {
    Int la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(a[shift + j].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
    ztrim(a);
  }
  return a;
}

// Exact division over Z; returns false if b does not divide a with an integral quotient.
inline bool zdivexact(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
  ZPoly r = a;
  quotient.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Int& lb = b.back();
  Int q;
  while (!r.empty() && r.size() >= b.size()) {
    if (!mpz_divisible_p(r.back().get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), r.back().get_mpz_t(), lb.get_mpz_t());
    const std::size_t shift = r.size() - b.size();
    quotient[shift] = q;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(r[shift + j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
    ztrim(r);
  }
  ztrim(quotient);
  return r.empty();
}

}  // namespace ffdio::detail
