#pragma once

/**
 * Exact linear algebra.
 *
 * Over K = Q(t): Gaussian elimination on RatFunc entries. Rank and
 * nonsingularity first try a specialization certificate: substituting
 * t -> t0 and reducing modulo a 61-bit prime can only lower the rank, so a
 * full-rank specialization proves full rank over K. Anything short of that
 * falls back to exact elimination; no answer is ever guessed.
 *
 * Over Q: RationalSpan, an incremental echelon basis of sparse vectors that
 * also tracks how each echelon row was built, so coordinates and relations
 * come out of the same pass.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ffdio/ratfunc.hpp"

namespace ffdio {

using KMatrix = std::vector<std::vector<RatFunc>>;

std::size_t rank_over_K(const KMatrix& m);
// Same, without the specialization shortcut (test oracle and fallback).
std::size_t rank_over_K_exact(const KMatrix& m);
RatFunc determinant(const KMatrix& m);
bool is_nonsingular(const KMatrix& m);
// Exact inverse; SingularMatrix when det = 0.
KMatrix inverse(const KMatrix& m);
KMatrix multiply(const KMatrix& a, const KMatrix& b);
KMatrix identity_matrix(std::size_t n);

// Sparse vector over Q: sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

class RationalSpan {
 public:
  // Adds v if it is independent of the vectors added so far; returns whether
  // it was. Dependent vectors leave the span unchanged.
  bool add(const SparseVec& v);
  // Coordinates of v in terms of the accepted vectors (in acceptance order),
  // or nullopt if v is outside the span.
  std::optional<std::vector<Rat>> coordinates(const SparseVec& v) const;
  std::size_t rank() const { return rows_.size(); }
  // Leading (pivot) index of every echelon row, ascending.
  std::vector<std::size_t> pivots() const;

 private:
  struct Row {
    SparseVec v;               // leading entry 1 at pivot
    std::vector<Rat> combo;    // v = sum combo[k] * accepted[k]
  };
  // Reduces v in place; returns the combination of echelon rows subtracted.
  void reduce(SparseVec& v, std::vector<Rat>& used) const;
  std::map<std::size_t, std::size_t> pivot_row_;  // pivot index -> row
  std::vector<Row> rows_;
};

// values[g][i] is the g-th sequence at the i-th window index. Each sequence
// becomes one sparse vector: per index, the coefficients of value * D_i with
// D_i the lcm of all denominators at that index. Rational linear relations
// among the vectors are exactly the relations among the sequences.
// block_end, when given, receives one past the last index used by each
// window position.
std::vector<SparseVec> encode_sequences(const std::vector<std::vector<RatFunc>>& values,
                                        std::vector<std::size_t>* block_end = nullptr);

}  // namespace ffdio
