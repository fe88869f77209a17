#include "ffdio/reduction.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <optional>

#include "ffdio/parallel.hpp"

namespace ffdio {

std::vector<long> form_orders(const PrimeDivisor& p, const std::vector<LinearForm>& forms, const ProjPoint& x) {
  std::vector<long> ords;
  ords.reserve(forms.size());
  for (std::size_t j = 0; j < forms.size(); ++j) {
    RatFunc v = forms[j].apply(x);
    if (v.is_zero()) throw DomainError("the point lies on hyperplane " + std::to_string(j + 1));
    ords.push_back(ord_at(v, p));
  }
  return ords;
}

std::vector<std::size_t> select_J(const PrimeDivisor& p, const std::vector<LinearForm>& forms, const ProjPoint& x) {
  const std::size_t need = x.dim() + 1;
  if (forms.size() < need) throw DomainError("fewer forms than M+1");
  auto ords = form_orders(p, forms, x);
  std::vector<std::size_t> idx(forms.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return ords[a] > ords[b]; });
  idx.resize(need);
  return idx;
}

PlaceSelection stabilize_J(const PrimeDivisor& p, const std::vector<std::int64_t>& alphas, const NormalizedFamily& nf,
                           const PointSequence& xs, unsigned threads) {
  std::vector<std::optional<std::vector<std::size_t>>> picks(alphas.size());
  parallel_for(alphas.size(), threads, [&](std::size_t i) {
    try {
      picks[i] = select_J(p, nf.forms(alphas[i]), eval_point(xs, alphas[i]));
    } catch (const DomainError&) {
    } catch (const EvalError&) {
    }
  });
  PlaceSelection sel;
  sel.place = p;
  std::map<std::vector<std::size_t>, std::vector<std::int64_t>> groups;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (picks[i])
      groups[*picks[i]].push_back(alphas[i]);
    else
      sel.skipped.push_back(alphas[i]);
  }
  sel.group_count = groups.size();
  for (auto& [J, members] : groups) {
    if (members.size() > sel.stable_subset.size()) {
      sel.J = J;
      sel.stable_subset = members;
    }
  }
  return sel;
}

PlaceSelection stabilize_J(const PrimeDivisor& p, const Window& window, const NormalizedFamily& nf,
                           const PointSequence& xs, unsigned threads) {
  std::vector<std::int64_t> alphas;
  for (std::size_t i = 0; i < window.size(); ++i) alphas.push_back(window.at(i));
  return stabilize_J(p, alphas, nf, xs, threads);
}

KMatrix invert_forms(const std::vector<std::size_t>& J, const std::vector<LinearForm>& forms) {
  KMatrix a;
  for (std::size_t j : J) a.emplace_back(forms[j].coeffs().begin(), forms[j].coeffs().end());
  KMatrix inv = inverse(a);
  if (multiply(inv, a) != identity_matrix(J.size())) throw IdentityFailure("inverse times forms is not the identity");
  return inv;
}

LocalInequality check_local_inequality(const PrimeDivisor& p, const std::vector<std::size_t>& J,
                                       const std::vector<LinearForm>& forms, const ProjPoint& x,
                                       const KMatrix& inverse) {
  const long e = e_point(x, p);
  auto ords = form_orders(p, forms, x);
  LocalInequality r;
  for (long o : ords) r.lhs += e - o;
  for (std::size_t j : J) r.rhs += e - ords[j];
  long m = LONG_MAX;
  for (const auto& row : inverse)
    for (const auto& v : row)
      if (!v.is_zero()) m = std::min(m, ord_at(v, p));
  r.min_inverse_order = m;
  r.rhs += static_cast<long>(forms.size() - J.size()) * m;
  r.holds = r.lhs >= r.rhs;
  return r;
}

std::vector<RatFunc> ProductBasis::eval(std::int64_t alpha) const {
  std::vector<std::vector<RatFunc>> xv;
  for (const auto& s : xis) xv.push_back({s(alpha)});
  std::vector<RatFunc> out;
  for (auto& v : monomial_values(xv, b)) out.push_back(std::move(v[0]));
  return out;
}

ProjPoint product_point(const std::vector<RatFunc>& b, const ProjPoint& x) {
  std::vector<RatFunc> c;
  c.reserve(b.size() * x.coords().size());
  for (const auto& xn : x.coords())
    for (const auto& bm : b) c.push_back(bm * xn);
  return ProjPoint(std::move(c));
}

TransferMatrix solve_transfer(const PrimeDivisor& p, const std::vector<std::size_t>& J, const NormalizedFamily& nf,
                              const ProductBasis& basis, const std::vector<std::int64_t>& alphas) {
  TransferMatrix t;
  t.place = p;
  t.J = J;
  t.M = nf.dim();
  t.l_s = basis.choice.l_s;
  t.l_s1 = basis.choice.l_s1;
  const std::size_t width = t.M + 1;

  std::vector<std::vector<RatFunc>> bvals(t.l_s1);
  for (std::int64_t a : alphas) {
    auto b = basis.eval(a);
    for (std::size_t mu = 0; mu < t.l_s1; ++mu) bvals[mu].push_back(std::move(b[mu]));
  }
  std::vector<std::vector<RatFunc>> family = bvals;
  for (std::size_t l = 0; l < width; ++l)
    for (std::size_t j = 0; j < t.l_s; ++j)
      for (std::size_t nu = 0; nu < width; ++nu) {
        std::vector<RatFunc> seq;
        const auto& xi = nf.rows[J[l]].xi[nu];
        for (std::size_t k = 0; k < alphas.size(); ++k) seq.push_back(bvals[j][k] * xi(alphas[k]));
        family.push_back(std::move(seq));
      }
  auto enc = encode_sequences(family);
  RationalSpan span;
  for (std::size_t mu = 0; mu < t.l_s1; ++mu)
    if (!span.add(enc[mu])) throw IdentityFailure("the basis of L(s+1) is dependent on the transfer window");

  t.C.assign(width * t.l_s, std::vector<Rat>(width * t.l_s1, Rat(0)));
  std::size_t k = t.l_s1;
  for (std::size_t l = 0; l < width; ++l)
    for (std::size_t j = 0; j < t.l_s; ++j)
      for (std::size_t nu = 0; nu < width; ++nu, ++k) {
        auto c = span.coordinates(enc[k]);
        if (!c)
          throw Error("b_" + std::to_string(j + 1) + " * xi_" + std::to_string(J[l] + 1) + "," + std::to_string(nu) +
                      " is not in L(s+1) on the window; enlarge the window");
        for (std::size_t mu = 0; mu < t.l_s1; ++mu) t.C[l * t.l_s + j][nu * t.l_s1 + mu] = (*c)[mu];
      }
  return t;
}

bool transfer_identity_holds(const TransferMatrix& t, const std::vector<RatFunc>& b, const ProjPoint& x,
                             const std::vector<LinearForm>& xi_forms) {
  ProjPoint P = product_point(b, x);
  for (std::size_t l = 0; l <= t.M; ++l) {
    RatFunc h = xi_forms[t.J[l]].apply(x);
    for (std::size_t j = 0; j < t.l_s; ++j) {
      const auto& row = t.C[l * t.l_s + j];
      RatFunc lhs;
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0 && !P[c].is_zero()) lhs += RatFunc(row[c]) * P[c];
      if (lhs != b[j] * h) return false;
    }
  }
  return true;
}

TransferMatrix build_transfer(const PlaceSelection& sel, const NormalizedFamily& nf, const ProductBasis& basis,
                              const PointSequence& xs, const std::vector<std::int64_t>& span_alphas,
                              unsigned threads) {
  const auto& stable = sel.stable_subset;
  const std::size_t n = (nf.dim() + 1) * basis.choice.l_s1;
  std::vector<std::vector<RatFunc>> rows(stable.size());
  parallel_for(stable.size(), threads, [&](std::size_t i) {
    ProjPoint P = product_point(basis.eval(stable[i]), eval_point(xs, stable[i]));
    rows[i].assign(P.coords().begin(), P.coords().end());
  });
  TransferMatrix t = solve_transfer(sel.place, sel.J, nf, basis, span_alphas);
  t.products_independent = stable.size() >= n && rank_over_K(rows) == n;
  std::vector<char> ok(stable.size());
  parallel_for(stable.size(), threads, [&](std::size_t i) {
    ok[i] = transfer_identity_holds(t, basis.eval(stable[i]), eval_point(xs, stable[i]), nf.forms(stable[i]));
  });
  for (std::size_t i = 0; i < stable.size(); ++i)
    if (!ok[i]) throw IdentityFailure("transfer identity fails at alpha=" + std::to_string(stable[i]));
  t.verified = stable.size();
  return t;
}

LinearForm DerivedFamily::form(std::size_t i) const {
  std::vector<RatFunc> c;
  for (const auto& v : rows[i]) c.emplace_back(v);
  return LinearForm(std::move(c));
}

DerivedFamily derive_and_pad(const TransferMatrix& t) {
  DerivedFamily d;
  const std::size_t n = t.C.empty() ? 0 : t.C[0].size();
  RationalSpan span;
  for (const auto& row : t.C) {
    SparseVec v;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != 0) v.emplace_back(c, row[c]);
    if (!span.add(v)) throw Error("transfer matrix is rank-deficient; the derived hyperplanes are dependent");
    d.rows.push_back(row);
  }
  d.derived = d.rows.size();
  for (std::size_t c = 0; c < n && span.rank() < n; ++c) {
    if (!span.add(SparseVec{{c, Rat(1)}})) continue;
    std::vector<Rat> e(n, Rat(0));
    e[c] = 1;
    d.rows.push_back(std::move(e));
    d.padding_columns.push_back(c);
  }
  if (span.rank() != n) throw IdentityFailure("padding did not complete the derived family");
  return d;
}

HeightDecomposition height_P_decomposition(const std::vector<RatFunc>& b, const ProjPoint& x) {
  HeightDecomposition r;
  r.h_P = height_point(product_point(b, x));
  r.h_x = height_point(x);
  r.h_b = height_of_vector(b);
  if (r.h_P != r.h_x + r.h_b)
    throw IdentityFailure("h(P) = " + std::to_string(r.h_P) + " but h(x) + h(b) = " + std::to_string(r.h_x + r.h_b));
  return r;
}

WeilTransfer weil_transfer_check(const PrimeDivisor& p, const TransferMatrix& t, std::size_t l, std::size_t j,
                                 const std::vector<RatFunc>& b, const ProjPoint& x, const LinearForm& original,
                                 const LinearForm& xi_form) {
  std::vector<RatFunc> c;
  for (const auto& v : t.C[l * t.l_s + j]) c.emplace_back(v);
  LinearForm derived(std::move(c));
  WeilTransfer w;
  w.lhs = weil(product_point(b, x), derived, p);
  w.lambda = weil(x, original, p);
  w.delta = (e_form(xi_form, p) + ord_at(b[j], p) - min_ord(b, p) - e_form(derived, p)) * p.degree();
  w.holds = w.lhs == w.lambda + w.delta;
  return w;
}

}  // namespace ffdio
