#include "ffdio/poly.hpp"

#include <algorithm>
#include <sstream>

#include "zpoly.hpp"

namespace ffdio {

namespace {
const Rat kZero(0);
}

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Poly Poly::monomial(const Rat& c, unsigned degree) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, Rat(0));
  p.c_[degree] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Poly::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rat& c) { return c != 0; }));
}

const Rat& Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }

const Rat& Poly::leading() const { return c_.empty() ? kZero : c_.back(); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
  // Single-term operands are common (t^k); skip the zero coefficients.
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  if (c == 0) return {};
  Poly r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(1 / leading());
}

Poly Poly::derivative() const {
  Poly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<unsigned long>(i);
  r.trim();
  return r;
}

Poly Poly::pow(unsigned e) const {
  if (term_count() == 1) {
    unsigned k = trailing_zeros();
    Rat c;
    mpz_pow_ui(c.get_num_mpz_t(), c_.back().get_num_mpz_t(), e);
    mpz_pow_ui(c.get_den_mpz_t(), c_.back().get_den_mpz_t(), e);
    return monomial(c, k * e);
  }
  Poly result(Rat(1)), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

unsigned Poly::trailing_zeros() const {
  unsigned k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  return k;
}

Poly Poly::shifted(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  Poly r;
  r.c_.assign(k, Rat(0));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (c < 0)
      out << '-';
    else if (!first)
      out << '+';
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << 't';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

std::strong_ordering compare_poly(const Poly& a, const Poly& b) {
  if (auto d = a.degree() <=> b.degree(); d != 0) return d;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    int c = cmp(a.coeffs()[i], b.coeffs()[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rat> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rat(0));
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Rat inv_lead = 1 / b.leading();
  Rat f;
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    f = r[i] * inv_lead;
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) {
      if (bc[j] != 0) r[i - db + j] -= f * bc[j];
    }
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("exact_div: " + b.to_string() + " does not divide " + a.to_string());
  return q;
}

bool divides(const Poly& d, const Poly& a) { return divmod(a, d).second.is_zero(); }

std::vector<Int> primitive_integer(const Poly& a) {
  Int l = 1;
  for (const auto& c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  detail::ZPoly z;
  z.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) {
    Int v = c.get_num() * (l / c.get_den());
    z.push_back(v);
  }
  detail::zprimitive(z);
  return z;
}

Poly from_integer(std::span<const Int> coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (const auto& z : coeffs) c.emplace_back(z);
  return Poly(std::move(c));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly(Rat(1));
  // Common power of t first: cheap and frequent for the sparse values we see.
  unsigned tz = std::min(a.trailing_zeros(), b.trailing_zeros());
  unsigned ta = a.trailing_zeros(), tb = b.trailing_zeros();
  detail::ZPoly x = primitive_integer(ta ? exact_div(a, Poly::monomial(1, ta)) : a);
  detail::ZPoly y = primitive_integer(tb ? exact_div(b, Poly::monomial(1, tb)) : b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) {
      x = {Int(1)};
      break;
    }
    detail::ZPoly r = detail::zprem(std::move(x), y);
    detail::zprimitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  Poly g = from_integer(x).monic();
  return tz ? g.shifted(tz) : g;
}

unsigned multiplicity(const Poly& d, Poly a) {
  if (a.is_zero()) throw DomainError("multiplicity in the zero polynomial");
  if (d.degree() < 1) throw DomainError("multiplicity of a constant");
  if (d.degree() == 1 && d.coeff(0) == 0) return a.trailing_zeros();
  unsigned v = 0;
  while (a.degree() >= d.degree()) {
    auto [q, r] = divmod(a, d);
    if (!r.is_zero()) break;
    a = std::move(q);
    ++v;
  }
  return v;
}

std::vector<Poly> squarefree_decomposition(const Poly& a0) {
  if (a0.is_zero()) throw DomainError("square-free decomposition of zero");
  Poly a = a0.monic();
  std::vector<Poly> parts;
  if (a.degree() == 0) return parts;
  // Powers of t are split off directly so that t^n never reaches the gcd.
  unsigned tz = a.trailing_zeros();
  if (tz > 0) a = exact_div(a, Poly::monomial(1, tz));
  if (a.degree() > 0) {
    Poly da = a.derivative();
    Poly b = poly_gcd(a, da);
    Poly c = exact_div(a, b);
    Poly d = exact_div(da, b) - c.derivative();
    while (c.degree() > 0) {
      Poly g = poly_gcd(c, d);
      parts.push_back(g);
      c = exact_div(c, g);
      d = exact_div(d, g) - c.derivative();
    }
  }
  if (tz > 0) {
    if (parts.size() < tz) parts.resize(tz, Poly(Rat(1)));
    parts[tz - 1] = parts[tz - 1] * Poly::t();
  }
  while (!parts.empty() && parts.back().degree() == 0) parts.pop_back();
  return parts;
}

}  // namespace ffdio
