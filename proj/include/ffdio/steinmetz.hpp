#pragma once

/**
 * Steinmetz monomial spaces.
 *
 * L(s) is the Q-span of all monomials of total degree s in the xi
 * sequences, regarded as functions of alpha. Dimensions are window ranks:
 * monomial values are encoded per alpha and reduced with exact rational
 * elimination, so l(s) is the number of monomials that stay independent
 * on the window.
 */

#include <cstdint>
#include <vector>

#include "ffdio/moving.hpp"

namespace ffdio {

using Exponents = std::vector<unsigned>;

// All exponent vectors of total degree s in n variables, graded-lex
// descending: n=2, s=2 gives (2,0), (1,1), (0,2).
std::vector<Exponents> monomials(std::size_t n, unsigned s);

// Value of prod xi_i^e_i at every window index (row = monomial).
std::vector<std::vector<RatFunc>> monomial_values(const std::vector<std::vector<RatFunc>>& xi_values,
                                                  const std::vector<Exponents>& mons);

// xi_values[i][k] = xis[i](window.at(k)); EvalError names the failing alpha.
std::vector<std::vector<RatFunc>> evaluate_on_window(const std::vector<Sequence>& xis, const Window& window,
                                                     unsigned threads = 1);

struct MonomialSpace {
  unsigned s = 0;
  std::vector<Exponents> generators;
  Window window;
  std::vector<std::size_t> basis;  // indices into generators, greedy in generator order
  std::size_t dim = 0;
  // coords[g] expresses generator g in the basis (length dim).
  std::vector<std::vector<Rat>> coords;
  // Rank of the generators on the prefix lo..alpha settles at its final
  // value from stable_since on; stabilized when that happened at least
  // kStabilizationRun indices before the window end.
  std::int64_t stable_since = 0;
  bool stabilized = false;
};

inline constexpr std::size_t kStabilizationRun = 3;

MonomialSpace dim_L(const std::vector<Sequence>& xis, unsigned s, const Window& window, unsigned threads = 1);
// Same from pre-evaluated xi values (xi_values[i] over window).
MonomialSpace dim_L(const std::vector<std::vector<RatFunc>>& xi_values, unsigned s, const Window& window);

struct SChoice {
  unsigned s = 0;
  std::size_t l_s = 0;
  std::size_t l_s1 = 0;
  std::vector<std::size_t> dims;  // l(0), ..., l(s+1)
};

// Smallest s <= s_max with l(s+1) <= (1 + delta) l(s). Error otherwise.
SChoice choose_s(const std::vector<Sequence>& xis, const Rat& delta, const Window& window, unsigned s_max,
                 unsigned threads = 1);
SChoice choose_s(const std::vector<std::vector<RatFunc>>& xi_values, const Rat& delta, const Window& window,
                 unsigned s_max);

// b_1..b_{l(s+1)} as degree-(s+1) exponent vectors: the basis of L(s) times
// the constant xi first, then a greedy completion from the generators of
// L(s+1). Requires an xi equal to 1 on the whole window.
std::vector<Exponents> extend_basis(const MonomialSpace& space_s, const MonomialSpace& space_s1,
                                    const std::vector<std::vector<RatFunc>>& xi_values);

// Q-rank of a family of sequences given by their window values.
std::size_t window_rank(const std::vector<std::vector<RatFunc>>& values);

// Text such as "xi1^2*xi3", or "1" for the zero vector.
std::string monomial_to_string(const Exponents& e);

}  // namespace ffdio
