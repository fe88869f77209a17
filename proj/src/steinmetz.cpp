#include "ffdio/steinmetz.hpp"

#include <map>

#include "ffdio/linalg.hpp"
#include "ffdio/parallel.hpp"

namespace ffdio {

namespace {

void fill(std::size_t n, unsigned s, Exponents& cur, std::vector<Exponents>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(s);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = s + 1; e-- > 0;) {
    cur.push_back(e);
    fill(n, s - e, cur, out);
    cur.pop_back();
  }
}

bool is_constant_one(const std::vector<RatFunc>& values) {
  for (const auto& v : values)
    if (v != RatFunc(1)) return false;
  return true;
}

}  // namespace

std::vector<Exponents> monomials(std::size_t n, unsigned s) {
  std::vector<Exponents> out;
  if (n == 0) return out;
  Exponents cur;
  fill(n, s, cur, out);
  return out;
}

std::string monomial_to_string(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "xi" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::vector<std::vector<RatFunc>> evaluate_on_window(const std::vector<Sequence>& xis, const Window& window,
                                                     unsigned threads) {
  std::vector<std::vector<RatFunc>> out(xis.size(), std::vector<RatFunc>(window.size()));
  parallel_for(window.size(), threads, [&](std::size_t k) {
    for (std::size_t i = 0; i < xis.size(); ++i) out[i][k] = xis[i](window.at(k));
  });
  return out;
}

std::vector<std::vector<RatFunc>> monomial_values(const std::vector<std::vector<RatFunc>>& xi_values,
                                                  const std::vector<Exponents>& mons) {
  const std::size_t n = xi_values.empty() ? 0 : xi_values[0].size();
  std::vector<std::vector<RatFunc>> out;
  out.reserve(mons.size());
  for (const auto& e : mons) {
    std::vector<RatFunc> v(n, RatFunc(1));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) v[k] *= xi_values[i][k].pow(static_cast<long>(e[i]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t window_rank(const std::vector<std::vector<RatFunc>>& values) {
  RationalSpan span;
  for (const auto& v : encode_sequences(values)) span.add(v);
  return span.rank();
}

MonomialSpace dim_L(const std::vector<std::vector<RatFunc>>& xi_values, unsigned s, const Window& window) {
  MonomialSpace sp;
  sp.s = s;
  sp.window = window;
  sp.generators = monomials(xi_values.size(), s);
  auto values = monomial_values(xi_values, sp.generators);
  std::vector<std::size_t> block_end;
  auto enc = encode_sequences(values, &block_end);

  RationalSpan span;
  for (std::size_t g = 0; g < enc.size(); ++g)
    if (span.add(enc[g])) sp.basis.push_back(g);
  sp.dim = sp.basis.size();
  for (const auto& v : enc) {
    auto c = span.coordinates(v);
    if (!c) throw IdentityFailure("generator outside the span of the greedy basis");
    sp.coords.push_back(std::move(*c));
  }

  // Prefix ranks: the transpose, fed one coefficient position at a time.
  std::map<std::size_t, SparseVec> columns;
  for (std::size_t g = 0; g < enc.size(); ++g)
    for (const auto& [idx, val] : enc[g]) columns[idx].emplace_back(g, val);
  RationalSpan prefix;
  auto col = columns.begin();
  std::vector<std::size_t> prefix_rank;
  for (std::size_t end : block_end) {
    for (; col != columns.end() && col->first < end; ++col) prefix.add(col->second);
    prefix_rank.push_back(prefix.rank());
  }
  std::size_t since = prefix_rank.size();
  while (since > 0 && prefix_rank[since - 1] == sp.dim) --since;
  sp.stable_since = window.at(since);
  sp.stabilized = window.size() - since > kStabilizationRun;
  return sp;
}

MonomialSpace dim_L(const std::vector<Sequence>& xis, unsigned s, const Window& window, unsigned threads) {
  if (window.size() == 0) throw DomainError("dim_L needs a nonempty window");
  return dim_L(evaluate_on_window(xis, window, threads), s, window);
}

SChoice choose_s(const std::vector<std::vector<RatFunc>>& xi_values, const Rat& delta, const Window& window,
                 unsigned s_max) {
  if (delta <= 0) throw DomainError("delta must be positive");
  SChoice c;
  c.dims.push_back(dim_L(xi_values, 0, window).dim);
  for (unsigned s = 0; s <= s_max; ++s) {
    c.dims.push_back(dim_L(xi_values, s + 1, window).dim);
    Rat lhs(static_cast<long>(c.dims[s + 1]));
    Rat rhs = (1 + delta) * Rat(static_cast<long>(c.dims[s]));
    if (lhs <= rhs) {
      c.s = s;
      c.l_s = c.dims[s];
      c.l_s1 = c.dims[s + 1];
      return c;
    }
  }
  throw Error("no s <= " + std::to_string(s_max) + " satisfies l(s+1) <= (1+" + to_string(delta) +
              ") l(s) on the window " + window.to_string() + "; raise s_max or the window");
}

SChoice choose_s(const std::vector<Sequence>& xis, const Rat& delta, const Window& window, unsigned s_max,
                 unsigned threads) {
  if (window.size() == 0) throw DomainError("choose_s needs a nonempty window");
  return choose_s(evaluate_on_window(xis, window, threads), delta, window, s_max);
}

std::vector<Exponents> extend_basis(const MonomialSpace& space_s, const MonomialSpace& space_s1,
                                    const std::vector<std::vector<RatFunc>>& xi_values) {
  if (space_s1.s != space_s.s + 1) throw DomainError("extend_basis needs consecutive degrees s and s+1");
  std::size_t one = xi_values.size();
  for (std::size_t i = 0; i < xi_values.size() && one == xi_values.size(); ++i)
    if (is_constant_one(xi_values[i])) one = i;
  if (one == xi_values.size())
    throw Error("no degree-preserving embedding of L(" + std::to_string(space_s.s) + ") into L(" +
                std::to_string(space_s1.s) + "): no xi equals 1 on the window");

  std::vector<Exponents> candidates;
  for (std::size_t g : space_s.basis) {
    Exponents e = space_s.generators[g];
    ++e[one];
    candidates.push_back(std::move(e));
  }
  const std::size_t prefix = candidates.size();
  candidates.insert(candidates.end(), space_s1.generators.begin(), space_s1.generators.end());
  auto enc = encode_sequences(monomial_values(xi_values, candidates));

  RationalSpan span;
  std::vector<Exponents> b;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    bool independent = span.add(enc[k]);
    if (k < prefix && !independent) throw IdentityFailure("basis of L(s) became dependent after the embedding");
    if (independent) b.push_back(candidates[k]);
  }
  if (b.size() != space_s1.dim) throw IdentityFailure("extended basis has the wrong size");
  return b;
}

}  // namespace ffdio
