#include "ffdio/factor.hpp"

#include <algorithm>
#include <random>

#include "modular.hpp"
#include "zpoly.hpp"

namespace ffdio {

using detail::PPoly;
using detail::u64;
using detail::ZPoly;

namespace {

// ---- (Z/mZ)[t] with a multiprecision modulus -------------------------------

void zreduce(ZPoly& a, const Int& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  detail::ztrim(a);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  detail::ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  detail::ztrim(r);
  return r;
}

ZPoly zmulmod(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r = detail::zmul(a, b);
  zreduce(r, m);
  return r;
}

// a = q*b + r mod m with b monic.
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly& q, ZPoly& r) {
  r = a;
  zreduce(r, m);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  const std::size_t db = b.size() - 1;
  for (std::size_t i = r.size(); i-- > db;) {
    mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), m.get_mpz_t());
    if (r[i] == 0) continue;
    Int f = r[i];
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), f.get_mpz_t(), b[j].get_mpz_t());
  }
  r.resize(db);
  zreduce(r, m);
  zreduce(q, m);
}

ZPoly to_z(const PPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

PPoly to_p(const ZPoly& a, u64 p) {
  PPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(detail::int_mod(c, p));
  detail::ptrim(r);
  return r;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw IdentityFailure("non-invertible leading coefficient during lifting");
  return r;
}

// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the same
// relations mod m^2, with h monic throughout.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, Int& m) {
  Int m2 = m * m;
  ZPoly e = zsub(f, detail::zmul(g, h));
  zreduce(e, m2);
  ZPoly q, r;
  zdivmod_monic(zmulmod(s, e, m2), h, m2, q, r);
  ZPoly g1 = zadd(g, zadd(detail::zmul(t, e), detail::zmul(q, g)));
  zreduce(g1, m2);
  ZPoly h1 = zadd(h, r);
  zreduce(h1, m2);
  ZPoly b = zsub(zadd(detail::zmul(s, g1), detail::zmul(t, h1)), ZPoly{Int(1)});
  zreduce(b, m2);
  ZPoly c, d;
  zdivmod_monic(zmulmod(s, b, m2), h1, m2, c, d);
  ZPoly s1 = zsub(s, d);
  zreduce(s1, m2);
  ZPoly t1 = zsub(t, zadd(detail::zmul(t, b), detail::zmul(c, g1)));
  zreduce(t1, m2);
  g = std::move(g1);
  h = std::move(h1);
  s = std::move(s1);
  t = std::move(t1);
  m = m2;
}

// Lifts f = lc(f) * prod(gs) (mod p) to monic factors mod `modulus` = p^(2^j).
void multifactor_lift(const ZPoly& f, std::vector<PPoly> gs, u64 p, const Int& modulus, std::vector<ZPoly>& out) {
  if (gs.size() == 1) {
    ZPoly r = f;
    Int inv = inverse_mod(f.back(), modulus);
    for (auto& c : r) c *= inv;
    zreduce(r, modulus);
    out.push_back(std::move(r));
    return;
  }
  const std::size_t half = gs.size() / 2;
  std::vector<PPoly> left(gs.begin(), gs.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<PPoly> right(gs.begin() + static_cast<std::ptrdiff_t>(half), gs.end());
  PPoly a0 = {detail::int_mod(f.back(), p)};
  for (const auto& g : left) a0 = detail::pmul(a0, g, p);
  PPoly b0 = {1};
  for (const auto& g : right) b0 = detail::pmul(b0, g, p);
  PPoly s0, t0;
  detail::pxgcd(a0, b0, p, s0, t0);
  ZPoly g = to_z(a0), h = to_z(b0), s = to_z(s0), t = to_z(t0);
  Int m = static_cast<unsigned long>(p);
  while (m < modulus) {
    ZPoly fm = f;
    zreduce(fm, m * m);
    hensel_step(fm, g, h, s, t, m);
  }
  multifactor_lift(g, std::move(left), p, modulus, out);
  multifactor_lift(h, std::move(right), p, modulus, out);
}

ZPoly symmetric(ZPoly a, const Int& m) {
  Int half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  detail::ztrim(a);
  return a;
}

// Zassenhaus recombination of lifted monic factors of the primitive f.
std::vector<ZPoly> recombine(ZPoly f, const std::vector<ZPoly>& lifted, const Int& modulus) {
  std::vector<ZPoly> result;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::size_t d = 1;
  while (2 * d <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> comb(d);
    for (std::size_t i = 0; i < d; ++i) comb[i] = i;
    for (;;) {
      const Int lc = f.back();
      ZPoly g = {lc};
      for (std::size_t i : comb) g = zmulmod(g, lifted[remaining[i]], modulus);
      g = symmetric(std::move(g), modulus);
      bool plausible = !g.empty();
      if (plausible && f[0] != 0 && g[0] != 0) {
        Int prod = lc * f[0];
        plausible = mpz_divisible_p(prod.get_mpz_t(), g[0].get_mpz_t()) != 0;
      }
      ZPoly q;
      if (plausible) {
        detail::zprimitive(g);
        if (detail::zdivexact(f, g, q)) {
          result.push_back(g);
          f = std::move(q);
          std::vector<std::size_t> rest;
          for (std::size_t i = 0; i < remaining.size(); ++i)
            if (std::find(comb.begin(), comb.end(), i) == comb.end()) rest.push_back(remaining[i]);
          remaining = std::move(rest);
          found = true;
          break;
        }
      }
      // next combination in lexicographic order
      std::size_t k = d;
      while (k > 0 && comb[k - 1] == remaining.size() - d + k - 1) --k;
      if (k == 0) break;
      ++comb[k - 1];
      for (std::size_t j = k; j < d; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (!found) ++d;
  }
  if (detail::zdeg(f) > 0) result.push_back(f);
  return result;
}

// Irreducible factors (primitive, positive leading coefficient) of a
// primitive square-free integer polynomial of degree >= 2.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f) {
  std::mt19937_64 rng(0x5eedf00dULL);
  const int n = detail::zdeg(f);
  std::vector<PPoly> best;
  u64 best_p = 0;
  int candidates = 0;
  for (u64 p = 5; candidates < 6; p += 2) {
    if (!detail::is_prime_u64(p)) continue;
    if (detail::int_mod(f.back(), p) == 0) continue;
    PPoly fp = to_p(f, p);
    if (detail::pdeg(detail::pgcd(fp, detail::pderiv(fp, p), p)) > 0) continue;
    auto facs = detail::factor_squarefree_mod_p(fp, p, rng);
    ++candidates;
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) return {f};
  }
  // Coefficient bound for lc(f)/lc(h) * h over all factors h of f.
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int bound = sqrt(norm2) + 1;
  bound *= abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  Int modulus = static_cast<unsigned long>(best_p);
  while (modulus <= 2 * bound) modulus *= modulus;
  std::vector<ZPoly> lifted;
  multifactor_lift(f, best, best_p, modulus, lifted);
  return recombine(f, lifted, modulus);
}

}  // namespace

Poly Factorization::expand() const {
  Poly r(unit);
  for (const auto& fp : factors) r = r * fp.factor.pow(fp.multiplicity);
  return r;
}

Factorization factorize(const Poly& p) {
  if (p.is_zero()) throw DomainError("factorize: zero polynomial");
  Factorization out{p.leading(), {}};
  auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Poly& part = parts[i];
    if (part.degree() < 1) continue;
    const unsigned mult = static_cast<unsigned>(i + 1);
    unsigned tz = part.trailing_zeros();
    Poly rest = tz ? exact_div(part, Poly::t()) : part;
    if (tz) out.factors.push_back({Poly::t(), mult});
    if (rest.degree() < 1) continue;
    if (rest.degree() == 1) {
      out.factors.push_back({rest.monic(), mult});
      continue;
    }
    for (const auto& z : factor_squarefree_z(primitive_integer(rest))) out.factors.push_back({from_integer(z).monic(), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return compare_poly(a.factor, b.factor) < 0; });
  if (out.expand() != p) throw IdentityFailure("factorization does not reproduce " + p.to_string());
  return out;
}

bool is_irreducible(const Poly& p) {
  if (p.degree() < 1) return false;
  auto f = factorize(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace ffdio
