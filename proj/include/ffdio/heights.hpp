#pragma once

/**
 * Projective points and linear forms over K, local minima e_p, heights,
 * Weil functions and proximity sums.
 *
 * Everything is an exact integer: with K = Q(t) the logarithmic height is a
 * weighted sum of orders, h(x) = -sum_p e_p(x) deg p.
 */

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffdio/places.hpp"

namespace ffdio {

class ProjPoint {
 public:
  // DomainError if every coordinate is zero.
  explicit ProjPoint(std::vector<RatFunc> coords);
  // "[x0 : x1 : ...]".
  static ProjPoint parse(std::string_view text);

  std::size_t dim() const { return coords_.size() - 1; }
  std::span<const RatFunc> coords() const { return coords_; }
  const RatFunc& operator[](std::size_t i) const { return coords_[i]; }
  ProjPoint scaled(const RatFunc& c) const;
  std::string to_string() const;

 private:
  std::vector<RatFunc> coords_;
};

class LinearForm {
 public:
  // DomainError if every coefficient is zero.
  explicit LinearForm(std::vector<RatFunc> coeffs);
  // "[a0, a1, ...]".
  static LinearForm parse(std::string_view text);

  std::size_t dim() const { return coeffs_.size() - 1; }
  std::span<const RatFunc> coeffs() const { return coeffs_; }
  const RatFunc& operator[](std::size_t i) const { return coeffs_[i]; }
  LinearForm scaled(const RatFunc& c) const;
  // L(x) = sum a_j x_j; dimensions must agree.
  RatFunc apply(const ProjPoint& x) const;
  std::string to_string() const;

 private:
  std::vector<RatFunc> coeffs_;
};

// Nonempty, duplicate-free, sorted.
class PlaceSet {
 public:
  explicit PlaceSet(std::vector<PrimeDivisor> places);
  std::span<const PrimeDivisor> places() const { return places_; }
  std::size_t size() const { return places_.size(); }
  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }

 private:
  std::vector<PrimeDivisor> places_;
};

// min over the nonzero entries of ord_p.
long min_ord(std::span<const RatFunc> values, const PrimeDivisor& p);
long e_point(const ProjPoint& x, const PrimeDivisor& p);
long e_form(const LinearForm& L, const PrimeDivisor& p);

// -sum_p min_i ord_p(v_i) deg p over every place, for a vector that is not all zero.
long height_of_vector(std::span<const RatFunc> values);
long height_point(const ProjPoint& x);
long height_form(const LinearForm& L);
// Height of a single element as the point [1 : a].
long height(const RatFunc& a);

// lambda_{p,H}(x) = (ord_p L(x) - e_p(x) - e_p(L)) deg p. DomainError when L(x) = 0.
long weil(const ProjPoint& x, const LinearForm& L, const PrimeDivisor& p);
// Sum of weil over every place; equals height_point(x) + height_form(L).
long weil_total(const ProjPoint& x, const LinearForm& L);
long proximity(const ProjPoint& x, const LinearForm& L, const PlaceSet& S);

// Pairwise coprime square-free polynomials such that every input is, up to a
// constant, a product of powers of them. Each prime divides at most one
// element, and all primes dividing one element share their orders in every
// input, which lets sums over places be taken element by element.
std::vector<Poly> coprime_support(std::span<const Poly> inputs);

}  // namespace ffdio
