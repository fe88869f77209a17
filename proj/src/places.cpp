#include "ffdio/places.hpp"

#include <algorithm>

#include "ffdio/factor.hpp"

namespace ffdio {

PrimeDivisor PrimeDivisor::finite(const Poly& q) {
  if (q.degree() < 1) throw DomainError("a finite place needs a polynomial of degree >= 1, got " + q.to_string());
  if (!is_irreducible(q)) throw DomainError(q.to_string() + " is not irreducible over Q");
  return PrimeDivisor(q.monic());
}

PrimeDivisor PrimeDivisor::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "inf") return infinity();
  RatFunc f = parse_ratfunc(s);
  if (!f.is_polynomial()) throw DomainError("a place must be a polynomial: " + std::string(text));
  return finite(f.num());
}

const Poly& PrimeDivisor::poly() const {
  if (!poly_) throw DomainError("the infinite place has no polynomial");
  return *poly_;
}

PrimeDivisor unchecked_prime(Poly q) { return PrimeDivisor(std::move(q)); }

std::strong_ordering operator<=>(const PrimeDivisor& a, const PrimeDivisor& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  return compare_poly(*a.poly_, *b.poly_);
}

int degree(const PrimeDivisor& p) { return p.degree(); }

long ord_at(const Poly& x, const PrimeDivisor& p) {
  if (x.is_zero()) throw DomainError("ord of zero is undefined");
  if (p.is_infinite()) return -static_cast<long>(x.degree());
  return static_cast<long>(multiplicity(p.poly(), x));
}

long ord_at(const RatFunc& x, const PrimeDivisor& p) {
  if (x.is_zero()) throw DomainError("ord of zero is undefined");
  if (p.is_infinite()) return static_cast<long>(x.den().degree()) - static_cast<long>(x.num().degree());
  long v = static_cast<long>(multiplicity(p.poly(), x.num()));
  if (v > 0) return v;
  return -static_cast<long>(multiplicity(p.poly(), x.den()));
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& t : terms) d += t.multiplicity * t.place.degree();
  return d;
}

std::string Divisor::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += "(" + terms[i].place.to_string() + "): " + std::to_string(terms[i].multiplicity);
  }
  return out + "}";
}

Divisor divisor_of(const RatFunc& x) {
  if (x.is_zero()) throw DomainError("divisor of zero is undefined");
  Divisor d;
  for (const auto& f : factorize(x.num()).factors) d.terms.push_back({unchecked_prime(f.factor), static_cast<long>(f.multiplicity)});
  if (x.den().degree() > 0)
    for (const auto& f : factorize(x.den()).factors) d.terms.push_back({unchecked_prime(f.factor), -static_cast<long>(f.multiplicity)});
  long inf = static_cast<long>(x.den().degree()) - static_cast<long>(x.num().degree());
  std::sort(d.terms.begin(), d.terms.end(), [](const DivisorTerm& a, const DivisorTerm& b) { return a.place < b.place; });
  if (inf != 0) d.terms.push_back({PrimeDivisor::infinity(), inf});
  return d;
}

long check_sum_formula(const RatFunc& x) { return divisor_of(x).degree(); }

}  // namespace ffdio
