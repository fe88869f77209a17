#pragma once

/**
 * Moving targets: point sequences and hyperplane families indexed by an
 * integer alpha, and executable probes for the hypotheses of the moving
 * subspace inequality.
 *
 * Infinite index sets are represented by closed-form Sequences evaluated on
 * a finite Window. "All but finitely many alpha" is read as "every alpha in
 * the window outside a reported exception list".
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ffdio/expr.hpp"
#include "ffdio/heights.hpp"

namespace ffdio {

// Inclusive integer range lo..hi.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  std::size_t size() const { return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  bool contains(std::int64_t a) const { return lo <= a && a <= hi; }
  std::int64_t at(std::size_t i) const { return lo + static_cast<std::int64_t>(i); }
  // "A..B".
  static Window parse(std::string_view text);
  std::string to_string() const;
};

struct PointSequence {
  std::vector<Sequence> coords;
  std::size_t dim() const { return coords.size() - 1; }
};

// Throws EvalError (all coordinates zero, or a failing coordinate).
ProjPoint eval_point(const PointSequence& xs, std::int64_t alpha);

// q rows of M+1 coefficient sequences a_{j,l}.
struct MovingHyperplaneFamily {
  std::vector<std::vector<Sequence>> rows;
  std::size_t q() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows[0].size() - 1; }
};

LinearForm eval_form(const MovingHyperplaneFamily& F, std::size_t j, std::int64_t alpha);
std::vector<LinearForm> eval_forms(const MovingHyperplaneFamily& F, std::int64_t alpha);

// Row j divided by its pivot coefficient: xi_{j,pivot} = 1.
struct NormalizedRow {
  std::size_t pivot = 0;
  std::vector<Sequence> xi;
  std::vector<std::int64_t> exceptions;  // window alpha where the pivot vanishes
};

struct NormalizedFamily {
  std::vector<NormalizedRow> rows;
  std::size_t q() const { return rows.size(); }
  std::size_t dim() const { return rows.empty() ? 0 : rows[0].xi.size() - 1; }
  // The form L^xi_j(alpha); DomainError when alpha is an exception of row j.
  LinearForm form(std::size_t j, std::int64_t alpha) const;
  std::vector<LinearForm> forms(std::int64_t alpha) const;
};

// Pivot of each row: the smallest l whose coefficient vanishes at no more
// than max_exceptions window indices. DomainError when no column qualifies.
NormalizedFamily normalize_xi(const MovingHyperplaneFamily& F, const Window& window, std::size_t max_exceptions = 0);

// Every (M+1)-subset of the forms has nonzero determinant.
bool general_position(const std::vector<LinearForm>& forms);
bool general_position_check(const MovingHyperplaneFamily& F, std::int64_t alpha);

struct WindowVerdict {
  Window window;
  bool holds = false;
  std::vector<std::int64_t> exceptions;
  Rat statistic;  // probe-specific summary (see each probe)
  std::vector<std::pair<std::int64_t, Rat>> detail;  // per-alpha statistic, when meaningful
  std::string note;
};

// statistic(alpha) = max_j h(H_j(alpha)) / h(x(alpha)). Holds when the largest
// value over the second half of the window does not exceed the largest over
// the first half, and the value at the window end is below delta. Alpha with
// h(x) = 0 are listed as exceptions; DomainError if that is every alpha of
// the second half.
WindowVerdict smallness_report(const MovingHyperplaneFamily& F, const PointSequence& xs, const Window& window,
                               const Rat& delta, unsigned threads = 1);

// Heuristic search for multi-homogeneous polynomials of degree <= d in the
// coefficients that vanish on a partial, but not negligible, part of the
// window. Candidates: single monomials, and rational kernel vectors of each
// multidegree block restricted to sub-windows (halves, residues mod 2 and
// mod 3). A candidate vanishing at >= threshold indices but not everywhere
// is a violation; statistic = number of violations.
WindowVerdict coherence_probe(const MovingHyperplaneFamily& F, const Window& window, unsigned degree_bound,
                              std::size_t threshold = 0);

// Holds iff no relation sum c_i x_i(alpha) = 0 with c_i in K independent of
// alpha holds on the whole window, i.e. the stacked coordinate rows have
// rank M+1 over K. statistic = that rank.
WindowVerdict nondegeneracy_probe(const PointSequence& xs, const Window& window);

}  // namespace ffdio
