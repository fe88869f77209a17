#include "ffdio/moving.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <optional>

#include "ffdio/linalg.hpp"
#include "ffdio/parallel.hpp"
#include "ffdio/text.hpp"

namespace ffdio {

Window Window::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto dots = s.find("..");
  auto bad = [&] { return Error("invalid window \"" + std::string(s) + "\" (expected A..B with A <= B)"); };
  if (dots == std::string_view::npos) throw bad();
  Window w;
  auto lo = trim(s.substr(0, dots)), hi = trim(s.substr(dots + 2));
  auto r1 = std::from_chars(lo.data(), lo.data() + lo.size(), w.lo);
  auto r2 = std::from_chars(hi.data(), hi.data() + hi.size(), w.hi);
  if (r1.ec != std::errc{} || r1.ptr != lo.data() + lo.size() || r2.ec != std::errc{} ||
      r2.ptr != hi.data() + hi.size() || w.hi < w.lo)
    throw bad();
  return w;
}

std::string Window::to_string() const { return std::to_string(lo) + ".." + std::to_string(hi); }

ProjPoint eval_point(const PointSequence& xs, std::int64_t alpha) {
  std::vector<RatFunc> c;
  c.reserve(xs.coords.size());
  for (const auto& s : xs.coords) c.push_back(s(alpha));
  if (std::all_of(c.begin(), c.end(), [](const RatFunc& v) { return v.is_zero(); }))
    throw EvalError(alpha, "every coordinate of the point vanishes");
  return ProjPoint(std::move(c));
}

LinearForm eval_form(const MovingHyperplaneFamily& F, std::size_t j, std::int64_t alpha) {
  std::vector<RatFunc> c;
  for (const auto& s : F.rows[j]) c.push_back(s(alpha));
  if (std::all_of(c.begin(), c.end(), [](const RatFunc& v) { return v.is_zero(); }))
    throw EvalError(alpha, "every coefficient of hyperplane " + std::to_string(j + 1) + " vanishes");
  return LinearForm(std::move(c));
}

std::vector<LinearForm> eval_forms(const MovingHyperplaneFamily& F, std::int64_t alpha) {
  std::vector<LinearForm> out;
  out.reserve(F.q());
  for (std::size_t j = 0; j < F.q(); ++j) out.push_back(eval_form(F, j, alpha));
  return out;
}

LinearForm NormalizedFamily::form(std::size_t j, std::int64_t alpha) const {
  const auto& row = rows[j];
  if (std::binary_search(row.exceptions.begin(), row.exceptions.end(), alpha))
    throw DomainError("alpha=" + std::to_string(alpha) + " is an exception of the pivot of row " + std::to_string(j + 1));
  std::vector<RatFunc> c;
  for (const auto& s : row.xi) c.push_back(s(alpha));
  return LinearForm(std::move(c));
}

std::vector<LinearForm> NormalizedFamily::forms(std::int64_t alpha) const {
  std::vector<LinearForm> out;
  for (std::size_t j = 0; j < q(); ++j) out.push_back(form(j, alpha));
  return out;
}

NormalizedFamily normalize_xi(const MovingHyperplaneFamily& F, const Window& window, std::size_t max_exceptions) {
  NormalizedFamily nf;
  for (std::size_t j = 0; j < F.q(); ++j) {
    const auto& row = F.rows[j];
    std::optional<std::size_t> pivot;
    std::vector<std::int64_t> zeros;
    for (std::size_t l = 0; l < row.size() && !pivot; ++l) {
      zeros.clear();
      for (std::size_t i = 0; i < window.size() && zeros.size() <= max_exceptions; ++i) {
        std::int64_t a = window.at(i);
        bool vanishes;
        try {
          vanishes = row[l](a).is_zero();
        } catch (const EvalError&) {
          vanishes = true;
        }
        if (vanishes) zeros.push_back(a);
      }
      if (zeros.size() <= max_exceptions) pivot = l;
    }
    if (!pivot)
      throw DomainError("hyperplane " + std::to_string(j + 1) + " has no coefficient that is nonzero on the window " +
                        window.to_string() + " outside " + std::to_string(max_exceptions) + " exceptions");
    NormalizedRow nr;
    nr.pivot = *pivot;
    nr.exceptions = zeros;
    for (std::size_t l = 0; l < row.size(); ++l) {
      auto lit = row[l].expr().literal();
      if (l == *pivot)
        nr.xi.push_back(Sequence::constant(Rat(1)));
      else if (lit && *lit == 0)
        nr.xi.push_back(Sequence::constant(Rat(0)));
      else
        nr.xi.push_back(Sequence(Expr::ratio(row[l].expr(), row[*pivot].expr()), row[l].alpha_min()));
    }
    nf.rows.push_back(std::move(nr));
  }
  return nf;
}

bool general_position(const std::vector<LinearForm>& forms) {
  if (forms.empty()) return true;
  const std::size_t n = forms[0].dim() + 1;
  if (forms.size() < n) {
    KMatrix m;
    for (const auto& f : forms) m.emplace_back(f.coeffs().begin(), f.coeffs().end());
    return rank_over_K(m) == forms.size();
  }
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    KMatrix m;
    for (std::size_t i : pick) m.emplace_back(forms[i].coeffs().begin(), forms[i].coeffs().end());
    if (!is_nonsingular(m)) return false;
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == forms.size() - n + k - 1) --k;
    if (k == 0) return true;
    ++pick[k - 1];
    for (std::size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
}

bool general_position_check(const MovingHyperplaneFamily& F, std::int64_t alpha) {
  return general_position(eval_forms(F, alpha));
}

WindowVerdict smallness_report(const MovingHyperplaneFamily& F, const PointSequence& xs, const Window& window,
                               const Rat& delta, unsigned threads) {
  const std::size_t n = window.size();
  std::vector<std::optional<Rat>> stat(n);
  parallel_for(n, threads, [&](std::size_t i) {
    std::int64_t a = window.at(i);
    long hx = height_point(eval_point(xs, a));
    if (hx == 0) return;
    long hmax = 0;
    for (std::size_t j = 0; j < F.q(); ++j) hmax = std::max(hmax, height_form(eval_form(F, j, a)));
    stat[i] = make_rat(hmax, hx);
  });

  WindowVerdict v;
  v.window = window;
  std::optional<Rat> first_max, second_max, last;
  for (std::size_t i = 0; i < n; ++i) {
    if (!stat[i]) {
      v.exceptions.push_back(window.at(i));
      continue;
    }
    v.detail.emplace_back(window.at(i), *stat[i]);
    auto& bucket = i < n / 2 ? first_max : second_max;
    if (!bucket || *stat[i] > *bucket) bucket = stat[i];
    last = stat[i];
  }
  if (!second_max) throw DomainError("h(x(alpha)) = 0 throughout the second half of the window " + window.to_string());
  v.statistic = *last;
  bool settles = !first_max || *second_max <= *first_max;
  v.holds = settles && *last < delta;
  v.note = "max_j h(H_j)/h(x) at window end = " + to_string(*last) + ", delta = " + to_string(delta) +
           (settles ? "" : "; second-half maximum exceeds first-half maximum");
  return v;
}

namespace {

// Exponent vectors of total degree d in n variables, lexicographically descending.
void exponent_vectors(std::size_t n, unsigned d, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = d + 1; e-- > 0;) {
    cur.push_back(e);
    exponent_vectors(n, d - e, cur, out);
    cur.pop_back();
  }
}

// Per-row degree patterns (d_1, ..., d_q) with 1 <= sum <= d.
void degree_patterns(std::size_t q, unsigned d, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == q) {
    unsigned s = 0;
    for (unsigned x : cur) s += x;
    if (s >= 1) out.push_back(cur);
    return;
  }
  unsigned used = 0;
  for (unsigned x : cur) used += x;
  for (unsigned e = 0; e + used <= d; ++e) {
    cur.push_back(e);
    degree_patterns(q, d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

WindowVerdict coherence_probe(const MovingHyperplaneFamily& F, const Window& window, unsigned degree_bound,
                              std::size_t threshold) {
  const std::size_t n = window.size();
  if (threshold == 0) threshold = std::max<std::size_t>(2, n / 10);
  const std::size_t q = F.q(), width = F.dim() + 1;

  // coeff[j][l][i] = a_{j,l}(alpha_i)
  std::vector<std::vector<std::vector<RatFunc>>> coeff(q, std::vector<std::vector<RatFunc>>(width));
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t l = 0; l < width; ++l)
      for (std::size_t i = 0; i < n; ++i) coeff[j][l].push_back(F.rows[j][l](window.at(i)));

  std::vector<std::pair<std::string, std::function<bool(std::size_t)>>> subwindows = {
      {"first half", [n](std::size_t i) { return i < n / 2; }},
      {"second half", [n](std::size_t i) { return i >= n / 2; }},
      {"even alpha", [&](std::size_t i) { return window.at(i) % 2 == 0; }},
      {"odd alpha", [&](std::size_t i) { return window.at(i) % 2 != 0; }},
  };
  for (int r = 0; r < 3; ++r)
    subwindows.emplace_back("alpha = " + std::to_string(r) + " mod 3",
                            [&window, r](std::size_t i) { return ((window.at(i) % 3) + 3) % 3 == r; });

  WindowVerdict v;
  v.window = window;
  std::size_t violations = 0;
  auto judge = [&](const std::vector<RatFunc>& values, const std::string& what) {
    std::vector<std::int64_t> zeros;
    for (std::size_t i = 0; i < n; ++i)
      if (values[i].is_zero()) zeros.push_back(window.at(i));
    if (zeros.size() >= threshold && zeros.size() < n) {
      if (violations++ == 0) {
        v.exceptions = zeros;
        v.note = what + " vanishes at " + std::to_string(zeros.size()) + " of " + std::to_string(n) + " indices";
      }
    }
  };

  std::vector<std::vector<unsigned>> patterns;
  std::vector<unsigned> cur;
  degree_patterns(q, degree_bound, cur, patterns);
  for (const auto& pat : patterns) {
    // Monomials of this multidegree: one exponent vector per row.
    std::vector<std::vector<std::vector<unsigned>>> per_row(q);
    for (std::size_t j = 0; j < q; ++j) {
      std::vector<unsigned> c2;
      exponent_vectors(width, pat[j], c2, per_row[j]);
    }
    std::vector<std::vector<RatFunc>> values;
    std::vector<std::string> names;
    std::vector<std::size_t> idx(q, 0);
    for (;;) {
      std::vector<RatFunc> val(n, RatFunc(1));
      std::string name;
      for (std::size_t j = 0; j < q; ++j) {
        const auto& ev = per_row[j][idx[j]];
        for (std::size_t l = 0; l < width; ++l) {
          if (ev[l] == 0) continue;
          name += (name.empty() ? "" : "*") + std::string("a_") + std::to_string(j + 1) + "," + std::to_string(l) +
                  (ev[l] > 1 ? "^" + std::to_string(ev[l]) : "");
          for (std::size_t i = 0; i < n; ++i)
            if (!val[i].is_zero()) val[i] *= coeff[j][l][i].pow(static_cast<long>(ev[l]));
        }
      }
      judge(val, "monomial " + name);
      values.push_back(std::move(val));
      names.push_back(std::move(name));
      std::size_t k = q;
      while (k > 0 && idx[k - 1] + 1 == per_row[k - 1].size()) idx[--k] = 0;
      if (k == 0) break;
      ++idx[k - 1];
    }
    if (values.size() < 2) continue;

    for (const auto& [label, keep] : subwindows) {
      std::vector<std::vector<RatFunc>> restricted(values.size());
      for (std::size_t m = 0; m < values.size(); ++m)
        for (std::size_t i = 0; i < n; ++i)
          if (keep(i)) restricted[m].push_back(values[m][i]);
      if (restricted[0].empty()) continue;
      auto enc = encode_sequences(restricted);
      RationalSpan span;
      std::vector<std::size_t> accepted;
      for (std::size_t m = 0; m < values.size(); ++m) {
        if (span.add(enc[m])) {
          accepted.push_back(m);
          continue;
        }
        auto c = span.coordinates(enc[m]);
        std::vector<RatFunc> combo = values[m];
        for (std::size_t k = 0; k < accepted.size(); ++k) {
          if ((*c)[k] == 0) continue;
          for (std::size_t i = 0; i < n; ++i) combo[i] -= RatFunc((*c)[k]) * values[accepted[k]][i];
        }
        judge(combo, "relation for " + names[m] + " found on " + label);
      }
    }
  }
  v.statistic = Rat(static_cast<long>(violations));
  v.holds = violations == 0;
  if (v.holds) v.note = "no partially vanishing candidate up to degree " + std::to_string(degree_bound);
  return v;
}

WindowVerdict nondegeneracy_probe(const PointSequence& xs, const Window& window) {
  WindowVerdict v;
  v.window = window;
  KMatrix rows;
  for (std::size_t i = 0; i < window.size(); ++i) {
    try {
      ProjPoint x = eval_point(xs, window.at(i));
      rows.emplace_back(x.coords().begin(), x.coords().end());
    } catch (const EvalError&) {
      v.exceptions.push_back(window.at(i));
    }
  }
  std::size_t rank = rows.empty() ? 0 : rank_over_K(rows);
  v.statistic = Rat(static_cast<long>(rank));
  v.holds = rank == xs.coords.size();
  v.note = "rank over K of the stacked coordinate rows = " + std::to_string(rank) + " (need " +
           std::to_string(xs.coords.size()) + ")";
  return v;
}

}  // namespace ffdio
