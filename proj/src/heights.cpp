#include "ffdio/heights.hpp"

#include <algorithm>
#include <climits>

#include "ffdio/text.hpp"

namespace ffdio {

namespace {

bool all_zero(const std::vector<RatFunc>& v) {
  return std::all_of(v.begin(), v.end(), [](const RatFunc& x) { return x.is_zero(); });
}

std::vector<Poly> support_inputs(std::span<const RatFunc> values) {
  std::vector<Poly> polys;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    polys.push_back(v.num());
    polys.push_back(v.den());
  }
  return polys;
}

// min over nonzero entries of ord at the squarefree basis element b.
long min_ord_at_element(std::span<const RatFunc> values, const Poly& b) {
  long best = LONG_MAX;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    long o = static_cast<long>(multiplicity(b, v.num()));
    if (o == 0) o = -static_cast<long>(multiplicity(b, v.den()));
    best = std::min(best, o);
  }
  return best;
}

long ord_at_element(const RatFunc& v, const Poly& b) {
  long o = static_cast<long>(multiplicity(b, v.num()));
  return o != 0 ? o : -static_cast<long>(multiplicity(b, v.den()));
}

}  // namespace

ProjPoint::ProjPoint(std::vector<RatFunc> coords) : coords_(std::move(coords)) {
  if (coords_.empty() || all_zero(coords_)) throw DomainError("a projective point needs a nonzero coordinate");
}

ProjPoint ProjPoint::parse(std::string_view text) {
  std::vector<RatFunc> c;
  for (const auto& part : split_bracketed(text, ':')) c.push_back(parse_ratfunc(part));
  return ProjPoint(std::move(c));
}

ProjPoint ProjPoint::scaled(const RatFunc& c) const {
  std::vector<RatFunc> v;
  for (const auto& x : coords_) v.push_back(x * c);
  return ProjPoint(std::move(v));
}

std::string ProjPoint::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? " : " : "") + coords_[i].to_string();
  return s + "]";
}

LinearForm::LinearForm(std::vector<RatFunc> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || all_zero(coeffs_)) throw DomainError("a linear form needs a nonzero coefficient");
}

LinearForm LinearForm::parse(std::string_view text) {
  std::vector<RatFunc> c;
  for (const auto& part : split_bracketed(text, ',')) c.push_back(parse_ratfunc(part));
  return LinearForm(std::move(c));
}

LinearForm LinearForm::scaled(const RatFunc& c) const {
  std::vector<RatFunc> v;
  for (const auto& x : coeffs_) v.push_back(x * c);
  return LinearForm(std::move(v));
}

RatFunc LinearForm::apply(const ProjPoint& x) const {
  if (x.dim() != dim()) throw DomainError("dimension mismatch between form and point");
  RatFunc acc;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero() || x[i].is_zero()) continue;
    acc += coeffs_[i] * x[i];
  }
  return acc;
}

std::string LinearForm::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? ", " : "") + coeffs_[i].to_string();
  return s + "]";
}

PlaceSet::PlaceSet(std::vector<PrimeDivisor> places) : places_(std::move(places)) {
  if (places_.empty()) throw DomainError("the place set S must be nonempty");
  std::sort(places_.begin(), places_.end());
  if (std::adjacent_find(places_.begin(), places_.end()) != places_.end()) throw DomainError("duplicate place in S");
}

long min_ord(std::span<const RatFunc> values, const PrimeDivisor& p) {
  long best = LONG_MAX;
  for (const auto& v : values)
    if (!v.is_zero()) best = std::min(best, ord_at(v, p));
  if (best == LONG_MAX) throw DomainError("min_ord of an all-zero vector");
  return best;
}

long e_point(const ProjPoint& x, const PrimeDivisor& p) { return min_ord(x.coords(), p); }
long e_form(const LinearForm& L, const PrimeDivisor& p) { return min_ord(L.coeffs(), p); }

std::vector<Poly> coprime_support(std::span<const Poly> inputs) {
  std::vector<Poly> basis;
  auto insert = [&basis](Poly f) {
    for (std::size_t i = 0; i < basis.size() && f.degree() > 0; ++i) {
      Poly g = poly_gcd(f, basis[i]);
      if (g.degree() < 1) continue;
      Poly rest = exact_div(basis[i], g);
      basis[i] = g;
      if (rest.degree() > 0) basis.push_back(rest.monic());
      f = exact_div(f, g);
    }
    if (f.degree() > 0) basis.push_back(f.monic());
  };
  for (const auto& p : inputs) {
    if (p.degree() < 1) continue;
    for (const auto& part : squarefree_decomposition(p))
      if (part.degree() > 0) insert(part);
  }
  std::sort(basis.begin(), basis.end(), [](const Poly& a, const Poly& b) { return compare_poly(a, b) < 0; });
  return basis;
}

long height_of_vector(std::span<const RatFunc> values) {
  auto inputs = support_inputs(values);
  if (inputs.empty()) throw DomainError("height of an all-zero vector");
  long h = -min_ord(values, PrimeDivisor::infinity());
  for (const auto& b : coprime_support(inputs)) h -= min_ord_at_element(values, b) * b.degree();
  return h;
}

long height_point(const ProjPoint& x) { return height_of_vector(x.coords()); }
long height_form(const LinearForm& L) { return height_of_vector(L.coeffs()); }

long height(const RatFunc& a) {
  const RatFunc v[2] = {RatFunc(1), a};
  return height_of_vector(v);
}

long weil(const ProjPoint& x, const LinearForm& L, const PrimeDivisor& p) {
  RatFunc lx = L.apply(x);
  if (lx.is_zero()) throw DomainError("the point " + x.to_string() + " lies on the hyperplane " + L.to_string());
  return (ord_at(lx, p) - e_point(x, p) - e_form(L, p)) * p.degree();
}

long weil_total(const ProjPoint& x, const LinearForm& L) {
  RatFunc lx = L.apply(x);
  if (lx.is_zero()) throw DomainError("the point " + x.to_string() + " lies on the hyperplane " + L.to_string());
  auto inputs = support_inputs(x.coords());
  auto more = support_inputs(L.coeffs());
  inputs.insert(inputs.end(), more.begin(), more.end());
  inputs.push_back(lx.num());
  inputs.push_back(lx.den());
  long total = weil(x, L, PrimeDivisor::infinity());
  for (const auto& b : coprime_support(inputs))
    total += (ord_at_element(lx, b) - min_ord_at_element(x.coords(), b) - min_ord_at_element(L.coeffs(), b)) * b.degree();
  return total;
}

long proximity(const ProjPoint& x, const LinearForm& L, const PlaceSet& S) {
  long sum = 0;
  for (const auto& p : S) sum += weil(x, L, p);
  return sum;
}

}  // namespace ffdio
