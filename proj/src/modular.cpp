#include "modular.hpp"

#include <algorithm>
#include <utility>

namespace ffdio::detail {

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 int_mod(const Int& z, u64 p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

bool rat_mod(const Rat& r, u64 p, u64& out) {
  u64 d = int_mod(r.get_den(), p);
  if (d == 0) return false;
  out = mulmod(int_mod(r.get_num(), p), invmod(d, p), p);
  return true;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PPoly pmul(const PPoly& a, const PPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  // Accumulate in 128 bits and reduce every 16 products (p < 2^62 keeps this in range).
  PPoly r(acc.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
      if ((acc[i + j] >> 126) != 0) acc[i + j] %= p;
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % p);
  ptrim(r);
  return r;
}

PPoly psub(const PPoly& a, const PPoly& b, u64 p) {
  PPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = submod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
  ptrim(r);
  return r;
}

void pdivmod(const PPoly& a, const PPoly& b, u64 p, PPoly& q, PPoly& r) {
  r = a;
  q.clear();
  if (a.size() < b.size()) return;
  q.assign(a.size() - b.size() + 1, 0);
  const u64 inv = invmod(b.back(), p);
  const std::size_t db = b.size() - 1;
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    u64 f = mulmod(r[i], inv, p);
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = submod(r[i - db + j], mulmod(f, b[j], p), p);
  }
  r.resize(db);
  ptrim(r);
  ptrim(q);
}

PPoly prem(const PPoly& a, const PPoly& b, u64 p) {
  PPoly q, r;
  pdivmod(a, b, p, q, r);
  return r;
}

PPoly pmonic(const PPoly& a, u64 p) {
  if (a.empty() || a.back() == 1) return a;
  u64 inv = invmod(a.back(), p);
  PPoly r = a;
  for (auto& c : r) c = mulmod(c, inv, p);
  return r;
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
  while (!b.empty()) {
    PPoly r = prem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a, p);
}

PPoly pxgcd(const PPoly& a, const PPoly& b, u64 p, PPoly& s, PPoly& t) {
  PPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    PPoly q, r;
    pdivmod(r0, r1, p, q, r);
    PPoly s2 = psub(s0, pmul(q, s1, p), p);
    PPoly t2 = psub(t0, pmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = invmod(r0.back(), p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  s = std::move(s0);
  t = std::move(t0);
  return pmonic(r0, p);
}

PPoly pderiv(const PPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  PPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
  ptrim(r);
  return r;
}

PPoly ppowmod(PPoly base, u64 e, const PPoly& m, u64 p) {
  PPoly r = {1};
  base = prem(base, m, p);
  while (e) {
    if (e & 1) r = prem(pmul(r, base, p), m, p);
    e >>= 1;
    if (e) base = prem(pmul(base, base, p), m, p);
  }
  return r;
}

u64 peval(const PPoly& a, u64 x, u64 p) {
  u64 acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = addmod(mulmod(acc, x, p), *it, p);
  return acc;
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus), p odd: g is a product of monic
// irreducibles of degree d.
void equal_degree_split(const PPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<PPoly>& out) {
  if (pdeg(g) == d) {
    out.push_back(g);
    return;
  }
  const int n = pdeg(g);
  for (;;) {
    PPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = rng() % p;
    ptrim(a);
    if (pdeg(a) < 1) continue;
    // y = a^(1 + p + ... + p^(d-1)) mod g, then y^((p-1)/2).
    PPoly frob = a, y = a;
    for (int k = 1; k < d; ++k) {
      frob = ppowmod(frob, p, g, p);
      y = prem(pmul(y, frob, p), g, p);
    }
    y = ppowmod(y, (p - 1) / 2, g, p);
    y = psub(y, {1}, p);
    PPoly h = pgcd(g, y, p);
    if (pdeg(h) > 0 && pdeg(h) < n) {
      PPoly q, r;
      pdivmod(g, h, p, q, r);
      equal_degree_split(h, d, p, rng, out);
      equal_degree_split(pmonic(q, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PPoly> factor_squarefree_mod_p(const PPoly& f0, u64 p, std::mt19937_64& rng) {
  std::vector<PPoly> result;
  PPoly f = pmonic(f0, p);
  PPoly x = {0, 1};
  PPoly h = x;
  for (int i = 1; 2 * i <= pdeg(f); ++i) {
    h = ppowmod(h, p, f, p);
    PPoly g = pgcd(f, psub(h, x, p), p);
    if (pdeg(g) > 0) {
      equal_degree_split(g, i, p, rng, result);
      PPoly q, r;
      pdivmod(f, g, p, q, r);
      f = pmonic(q, p);
      h = prem(h, f, p);
    }
  }
  if (pdeg(f) > 0) result.push_back(f);
  return result;
}

std::size_t rank_mod_p(std::vector<std::vector<u64>>& m, u64 p) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    u64 inv = invmod(m[rank][c], p);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      u64 f = mulmod(m[r][c], inv, p);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = submod(m[r][k], mulmod(f, m[rank][k], p), p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace ffdio::detail
