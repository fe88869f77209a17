#pragma once

/**
 * Reduction of moving targets to fixed targets in a larger projective
 * space.
 *
 * For each place p the forms are ranked by ord_p L^xi_j(x(alpha)); the top
 * M+1 (the selection J) are inverted, products of the Steinmetz basis with
 * the point give P(alpha), and the constant transfer matrix C(p) rewrites
 * b_j * h_{J[l]} in the coordinates of P. Every identity on the way is
 * checked exactly; a failure is a bug and raises IdentityFailure.
 *
 * Indices are 0-based throughout; reports add 1.
 */

#include <cstdint>
#include <vector>

#include "ffdio/linalg.hpp"
#include "ffdio/moving.hpp"
#include "ffdio/steinmetz.hpp"

namespace ffdio {

// ord_p L_j(x) for every form; DomainError if x lies on one of them.
std::vector<long> form_orders(const PrimeDivisor& p, const std::vector<LinearForm>& forms, const ProjPoint& x);

// The M+1 indices of largest ord_p L_j(x), by decreasing order, ties to the
// smaller index.
std::vector<std::size_t> select_J(const PrimeDivisor& p, const std::vector<LinearForm>& forms, const ProjPoint& x);

struct PlaceSelection {
  PrimeDivisor place = PrimeDivisor::infinity();
  std::vector<std::size_t> J;
  std::vector<std::int64_t> stable_subset;
  std::size_t group_count = 0;           // distinct selections seen on the window
  std::vector<std::int64_t> skipped;     // alpha where selection was impossible
};

// Majority selection over the given indices (ties: lexicographically smallest J).
PlaceSelection stabilize_J(const PrimeDivisor& p, const std::vector<std::int64_t>& alphas, const NormalizedFamily& nf,
                           const PointSequence& xs, unsigned threads = 1);
PlaceSelection stabilize_J(const PrimeDivisor& p, const Window& window, const NormalizedFamily& nf,
                           const PointSequence& xs, unsigned threads = 1);

// Inverse of the matrix whose rows are the coefficient vectors of forms[J[i]],
// verified against the identity. SingularMatrix when the rows are dependent.
KMatrix invert_forms(const std::vector<std::size_t>& J, const std::vector<LinearForm>& forms);

struct LocalInequality {
  long lhs = 0;  // sum_j (e_p(x) - ord_p L_j(x))
  long rhs = 0;  // sum_{j in J} (e_p(x) - ord_p L_j(x)) + (q-M-1) min ord_p(inverse entries)
  long min_inverse_order = 0;
  bool holds = false;
};

LocalInequality check_local_inequality(const PrimeDivisor& p, const std::vector<std::size_t>& J,
                                       const std::vector<LinearForm>& forms, const ProjPoint& x,
                                       const KMatrix& inverse);

// The Steinmetz data shared by every place.
struct ProductBasis {
  std::vector<Sequence> xis;   // distinct nonzero xi sequences, first occurrence order
  SChoice choice;
  std::vector<Exponents> b;    // b_1..b_{l(s+1)}; the first l(s) span L(s)
  std::vector<RatFunc> eval(std::int64_t alpha) const;
};

// Coordinates [b_1 x_0 : ... : b_L x_0 : b_1 x_1 : ... : b_L x_M].
ProjPoint product_point(const std::vector<RatFunc>& b, const ProjPoint& x);

struct TransferMatrix {
  PrimeDivisor place = PrimeDivisor::infinity();
  std::vector<std::size_t> J;
  std::size_t M = 0, l_s = 0, l_s1 = 0;
  // Row l*l_s + j, column nu*l_s1 + mu.
  std::vector<std::vector<Rat>> C;
  std::size_t verified = 0;  // alpha at which the defining identity was checked
  // No K-relation among the products b_mu x_nu on the stable subset. The
  // identities hold either way; the fixed-target step needs this.
  bool products_independent = false;
};

// Rows of C as the rational coordinates of b_j * xi_{J[l],nu} in the basis
// b_mu, computed on the given indices. Error when some product leaves the
// span (a window artifact).
TransferMatrix solve_transfer(const PrimeDivisor& p, const std::vector<std::size_t>& J, const NormalizedFamily& nf,
                              const ProductBasis& basis, const std::vector<std::int64_t>& alphas);

// C(p) * P(alpha) == (b_j(alpha) h_{J[l]}(alpha)) exactly.
bool transfer_identity_holds(const TransferMatrix& t, const std::vector<RatFunc>& b, const ProjPoint& x,
                             const std::vector<LinearForm>& xi_forms);

// Solves for C on span_alphas, verifies the identity at every stable alpha
// and records whether the products b_mu x_nu are K-independent there.
TransferMatrix build_transfer(const PlaceSelection& sel, const NormalizedFamily& nf, const ProductBasis& basis,
                              const PointSequence& xs, const std::vector<std::int64_t>& span_alphas,
                              unsigned threads = 1);

struct DerivedFamily {
  std::vector<std::vector<Rat>> rows;  // derived rows first, then padding
  std::size_t derived = 0;
  std::vector<std::size_t> padding_columns;
  LinearForm form(std::size_t i) const;
};

// Rows of C followed by coordinate forms, chosen in coordinate order, that
// keep the family independent. Error when C is rank-deficient.
DerivedFamily derive_and_pad(const TransferMatrix& t);

struct HeightDecomposition {
  long h_P = 0, h_x = 0, h_b = 0;
};

// h(P) = h(x) + h([b]); IdentityFailure otherwise.
HeightDecomposition height_P_decomposition(const std::vector<RatFunc>& b, const ProjPoint& x);

struct WeilTransfer {
  long lhs = 0;     // lambda_{p, derived form}(P)
  long lambda = 0;  // lambda_{p, H_{J[l]}}(x)
  long delta = 0;
  bool holds = false;
};

// Derived form l*l_s + j against the original hyperplane J[l]. DomainError
// when P lies on the derived hyperplane.
WeilTransfer weil_transfer_check(const PrimeDivisor& p, const TransferMatrix& t, std::size_t l, std::size_t j,
                                 const std::vector<RatFunc>& b, const ProjPoint& x, const LinearForm& original,
                                 const LinearForm& xi_form);

}  // namespace ffdio
