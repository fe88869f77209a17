#include "ffdio/harness.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "ffdio/linalg.hpp"
#include "ffdio/parallel.hpp"
#include "ffdio/reduction.hpp"
#include "ffdio/report.hpp"
#include "ffdio/steinmetz.hpp"

namespace ffdio {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Refused:
      return "REFUSED";
  }
  return "REFUSED";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return 0;
    case Verdict::Fail:
      return 2;
    case Verdict::Refused:
      return 3;
  }
  return 3;
}

std::vector<std::vector<std::size_t>> independent_subsets(const std::vector<LinearForm>& forms, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t q = forms.size();
  for (std::size_t k = 1; k <= std::min(max_size, q); ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      KMatrix m;
      for (std::size_t i : pick) m.emplace_back(forms[i].coeffs().begin(), forms[i].coeffs().end());
      if (rank_over_K(m) == k) out.push_back(pick);
      std::size_t r = k;
      while (r > 0 && pick[r - 1] == q - k + r - 1) --r;
      if (r == 0) break;
      ++pick[r - 1];
      for (std::size_t i = r; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  return out;
}

namespace {

// Per-row data shared by the three runs before the verdict is taken.
struct Pending {
  ReportRow row;
  Rat base;  // RHS without the fitted constant
};

ProbeSummary general_position_probe(const ExperimentConfig& cfg, unsigned threads, bool required) {
  const Window& w = cfg.window;
  std::vector<char> ok(w.size());
  parallel_for(w.size(), threads, [&](std::size_t i) {
    try {
      ok[i] = general_position_check(cfg.family, w.at(i));
    } catch (const Error&) {
      ok[i] = false;
    }
  });
  ProbeSummary p{"general_position", required, {}};
  p.verdict.window = w;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!ok[i]) p.verdict.exceptions.push_back(w.at(i));
  p.verdict.holds = p.verdict.exceptions.empty();
  p.verdict.statistic = Rat(static_cast<long>(p.verdict.exceptions.size()));
  p.verdict.note = p.verdict.holds ? "every (M+1)-subset is independent at every alpha"
                                   : std::to_string(p.verdict.exceptions.size()) + " alpha violate general position";
  return p;
}

ProbeSummary smallness_probe(const ExperimentConfig& cfg, unsigned threads) {
  ProbeSummary p{"smallness", true, {}};
  try {
    p.verdict = smallness_report(cfg.family, cfg.xs, cfg.window, cfg.thresholds.smallness_delta, threads);
  } catch (const Error& e) {
    p.verdict.window = cfg.window;
    p.verdict.holds = false;
    p.verdict.note = e.what();
  }
  p.verdict.detail.clear();
  return p;
}

ProbeSummary nondegeneracy(const ExperimentConfig& cfg) {
  return ProbeSummary{"nondegeneracy", true, nondegeneracy_probe(cfg.xs, cfg.window)};
}

ProbeSummary coherence(const ExperimentConfig& cfg) {
  ProbeSummary p{"coherence", false, {}};
  try {
    p.verdict = coherence_probe(cfg.family, cfg.window, cfg.thresholds.coherence_degree);
  } catch (const Error& e) {
    p.verdict.window = cfg.window;
    p.verdict.holds = false;
    p.verdict.note = e.what();
  }
  return p;
}

// Fills report.probes; true when every required probe holds.
bool record_probes(VerificationReport& rep, std::vector<ProbeSummary> probes) {
  bool ok = true;
  for (const auto& p : probes)
    if (p.required && !p.verdict.holds) {
      ok = false;
      rep.message += (rep.message.empty() ? "" : "; ") + p.name + " probe failed: " + p.verdict.note;
    }
  rep.probes = std::move(probes);
  if (!ok) rep.verdict = Verdict::Refused;
  return ok;
}

VerificationReport start(const ExperimentConfig& cfg, Mode mode) {
  VerificationReport rep;
  rep.mode = mode;
  rep.config = cfg.to_json();
  rep.config["mode"] = to_string(mode);
  return rep;
}

void finalize(VerificationReport& rep, std::vector<Pending>& pending, const ExperimentConfig& cfg) {
  const std::size_t n = pending.size();
  const Rat& tf = cfg.thresholds.tail_fraction;
  Int prod = Int(static_cast<long>(n)) * tf.get_num();
  Int head_z = (prod + tf.get_den() - 1) / tf.get_den();
  const std::size_t head = std::min<std::size_t>(n, head_z.get_ui());

  Rat c = 0;
  std::size_t usable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i].row.excluded) continue;
    ++usable;
    if (i < head) c = std::max(c, Rat(Rat(pending[i].row.lhs) - pending[i].base));
  }
  rep.fitted_constant = c;
  rep.tail_start = head < n ? pending[head].row.alpha : cfg.window.hi + 1;
  if (usable == 0) {
    rep.verdict = Verdict::Refused;
    rep.message = "every alpha in the window was excluded";
  }

  bool tail_ok = true, tail_ok_plain = true;
  std::size_t passing = 0, passing_plain = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = pending[i].row;
    row.rhs = pending[i].base + c;
    if (row.excluded) continue;
    bool ok = Rat(row.lhs) <= row.rhs;
    bool ok_plain = Rat(row.lhs) <= pending[i].base;
    passing += ok;
    passing_plain += ok_plain;
    if (i >= head) {
      tail_ok = tail_ok && ok;
      tail_ok_plain = tail_ok_plain && ok_plain;
    }
  }
  rep.passing_fraction = usable ? make_rat(static_cast<long>(passing), static_cast<long>(usable)) : Rat(0);
  if (cfg.thresholds.infinite_subset) {
    const Rat& f = *cfg.thresholds.infinite_subset;
    tail_ok = usable && rep.passing_fraction >= f;
    tail_ok_plain = usable && make_rat(static_cast<long>(passing_plain), static_cast<long>(usable)) >= f;
  }
  rep.pass_without_constant = usable && tail_ok_plain;
  if (usable) rep.verdict = tail_ok ? Verdict::Pass : Verdict::Fail;
  rep.rows.reserve(n);
  for (auto& p : pending) rep.rows.push_back(std::move(p.row));
}

void set_ratio(ReportRow& row) {
  if (row.h_x > 0) row.ratio = make_rat(row.lhs, row.h_x);
}

}  // namespace

VerificationReport run_verify(const ExperimentConfig& cfg, const RunOptions& opt) {
  VerificationReport rep = start(cfg, Mode::Verify);
  if (!record_probes(rep, {general_position_probe(cfg, opt.threads, true), smallness_probe(cfg, opt.threads),
                           nondegeneracy(cfg), coherence(cfg)}))
    return rep;

  const PlaceSet S = cfg.places();
  const Rat factor = Rat(static_cast<long>(cfg.M + 1)) + cfg.epsilon;
  std::vector<Pending> pending(cfg.window.size());
  parallel_for(pending.size(), opt.threads, [&](std::size_t i) {
    auto& row = pending[i].row;
    row.alpha = cfg.window.at(i);
    ProjPoint x = eval_point(cfg.xs, row.alpha);
    auto forms = eval_forms(cfg.family, row.alpha);
    row.h_x = height_point(x);
    pending[i].base = factor * Rat(row.h_x);
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (forms[j].apply(x).is_zero()) {
        row.excluded = true;
        row.note = "x lies on H_" + std::to_string(j + 1);
        row.lam.assign(forms.size(), 0);
        return;
      }
    for (const auto& f : forms) {
      row.lam.push_back(proximity(x, f, S));
      row.lhs += row.lam.back();
    }
    set_ratio(row);
  });
  finalize(rep, pending, cfg);
  return rep;
}

VerificationReport run_wang_check(const ExperimentConfig& cfg, const RunOptions& opt) {
  VerificationReport rep = start(cfg, Mode::Wang);
  for (const auto& row : cfg.family.rows)
    for (const auto& s : row)
      if (s.expr().uses_index()) throw ConfigError("hyperplanes", "the fixed-target check needs constant forms");
  if (!record_probes(rep, {nondegeneracy(cfg)})) return rep;

  const PlaceSet S = cfg.places();
  const auto forms = eval_forms(cfg.family, cfg.window.lo);
  const auto subsets = independent_subsets(forms, cfg.M + 1);
  const Rat factor = Rat(static_cast<long>(cfg.M + 1)) + cfg.epsilon;
  std::vector<Pending> pending(cfg.window.size());
  std::vector<char> full_attains(pending.size(), 1);
  parallel_for(pending.size(), opt.threads, [&](std::size_t i) {
    auto& row = pending[i].row;
    row.alpha = cfg.window.at(i);
    ProjPoint x = eval_point(cfg.xs, row.alpha);
    row.h_x = height_point(x);
    pending[i].base = factor * Rat(row.h_x);
    row.lam.assign(forms.size(), 0);
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (forms[j].apply(x).is_zero()) {
        row.excluded = true;
        row.note = "x lies on H_" + std::to_string(j + 1);
        return;
      }
    for (const auto& p : S) {
      std::vector<long> lam;
      long full = 0;
      for (std::size_t j = 0; j < forms.size(); ++j) {
        lam.push_back(weil(x, forms[j], p));
        row.lam[j] += lam.back();
        full += lam.back();
      }
      long best = 0;
      for (const auto& J : subsets) {
        long s = 0;
        for (std::size_t j : J) s += lam[j];
        best = std::max(best, s);
      }
      row.lhs += best;
      if (best != full) full_attains[i] = 0;
    }
    set_ratio(row);
  });
  finalize(rep, pending, cfg);
  bool attains = true;
  for (std::size_t i = 0; i < pending.size(); ++i)
    if (!rep.rows[i].excluded && !full_attains[i]) attains = false;
  rep.details["independent_subsets"] = subsets.size();
  rep.details["full_set_attains_max"] = attains;
  return rep;
}

namespace {

struct PlaceRun {
  PlaceSelection sel;
  TransferMatrix transfer;
  DerivedFamily derived;
  std::set<std::int64_t> own_stable;  // stable subset of this place alone
  std::size_t height_checked = 0, weil_checked = 0, weil_excluded = 0, local_checked = 0;
  std::optional<Rat> xi_tilde_end;  // max_entries h(entry)/h(x) at the last stable alpha
  Rat xi_tilde_max;
};

}  // namespace

VerificationReport run_reduction(const ExperimentConfig& cfg, const RunOptions& opt) {
  VerificationReport rep = start(cfg, Mode::Reduce);
  ProbeSummary gp = general_position_probe(cfg, opt.threads, false);
  if (!record_probes(rep, {gp, smallness_probe(cfg, opt.threads), nondegeneracy(cfg), coherence(cfg)})) return rep;

  NormalizedFamily nf;
  try {
    nf = normalize_xi(cfg.family, cfg.window);
  } catch (const DomainError& e) {
    rep.verdict = Verdict::Refused;
    rep.message = e.what();
    return rep;
  }

  const Window& W = cfg.window;
  const std::size_t n = W.size();
  std::vector<std::string> inadmissible(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    std::int64_t a = W.at(i);
    try {
      ProjPoint x = eval_point(cfg.xs, a);
      auto forms = nf.forms(a);
      if (!general_position(forms)) {
        inadmissible[i] = "general position fails";
        return;
      }
      for (std::size_t j = 0; j < forms.size(); ++j)
        if (forms[j].apply(x).is_zero()) {
          inadmissible[i] = "x lies on H_" + std::to_string(j + 1);
          return;
        }
    } catch (const Error& e) {
      inadmissible[i] = e.what();
    }
  });
  std::vector<std::int64_t> A0;
  for (std::size_t i = 0; i < n; ++i)
    if (inadmissible[i].empty()) A0.push_back(W.at(i));
  if (A0.size() < 2) {
    rep.verdict = Verdict::Refused;
    rep.message = "fewer than two admissible alpha in the window";
    return rep;
  }

  // J is stabilized per place first; the monomial space and the transfer
  // matrices then live on the common stable subset A1.
  const PlaceSet S = cfg.places();
  std::vector<PlaceRun> runs;
  std::vector<std::int64_t> A1 = A0;
  for (const auto& p : S) {
    PlaceRun pr;
    pr.sel = stabilize_J(p, A0, nf, cfg.xs, opt.threads);
    pr.own_stable.insert(pr.sel.stable_subset.begin(), pr.sel.stable_subset.end());
    std::vector<std::int64_t> both;
    std::set_intersection(A1.begin(), A1.end(), pr.sel.stable_subset.begin(), pr.sel.stable_subset.end(),
                          std::back_inserter(both));
    A1 = std::move(both);
    runs.push_back(std::move(pr));
  }
  if (A1.size() < 2) {
    rep.verdict = Verdict::Refused;
    rep.message = "the stable subsets of the places share fewer than two alpha";
    return rep;
  }

  // Distinct nonzero xi sequences on A1.
  ProductBasis basis;
  std::vector<std::vector<RatFunc>> xi_values;
  for (const auto& row : nf.rows)
    for (const auto& xi : row.xi) {
      std::vector<RatFunc> v;
      for (std::int64_t a : A1) v.push_back(xi(a));
      if (std::all_of(v.begin(), v.end(), [](const RatFunc& r) { return r.is_zero(); })) continue;
      if (std::find(xi_values.begin(), xi_values.end(), v) != xi_values.end()) continue;
      xi_values.push_back(std::move(v));
      basis.xis.push_back(xi);
    }
  Window nominal{A1.front(), A1.back()};
  basis.choice = choose_s(xi_values, cfg.delta, nominal, cfg.s_max);
  MonomialSpace Ls = dim_L(xi_values, basis.choice.s, nominal);
  MonomialSpace Ls1 = dim_L(xi_values, basis.choice.s + 1, nominal);
  basis.b = extend_basis(Ls, Ls1, xi_values);
  const std::size_t l_s = basis.choice.l_s, l_s1 = basis.choice.l_s1;

  for (auto& pr : runs) {
    const PrimeDivisor& p = pr.sel.place;
    pr.sel.stable_subset = A1;
    pr.transfer = build_transfer(pr.sel, nf, basis, cfg.xs, A1, opt.threads);
    pr.derived = derive_and_pad(pr.transfer);

    const auto& stable = pr.sel.stable_subset;
    std::vector<std::size_t> weil_ok(stable.size()), weil_skip(stable.size());
    std::vector<std::optional<Rat>> xt(stable.size());
    parallel_for(stable.size(), opt.threads, [&](std::size_t i) {
      std::int64_t a = stable[i];
      auto forms = nf.forms(a);
      ProjPoint x = eval_point(cfg.xs, a);
      auto b = basis.eval(a);
      KMatrix inv = invert_forms(pr.sel.J, forms);
      height_P_decomposition(b, x);
      for (std::size_t l = 0; l <= cfg.M; ++l) {
        LinearForm original = eval_form(cfg.family, pr.sel.J[l], a);
        for (std::size_t j = 0; j < l_s; ++j) {
          WeilTransfer w;
          try {
            w = weil_transfer_check(p, pr.transfer, l, j, b, x, original, forms[pr.sel.J[l]]);
          } catch (const DomainError&) {
            ++weil_skip[i];
            continue;
          }
          if (!w.holds)
            throw IdentityFailure("Weil transfer fails at " + p.to_string() + ", alpha=" + std::to_string(a) +
                                  ", l=" + std::to_string(l) + ", j=" + std::to_string(j + 1) + ": " +
                                  std::to_string(w.lhs) + " != " + std::to_string(w.lambda) + " + " +
                                  std::to_string(w.delta));
          ++weil_ok[i];
        }
      }
      long hx = height_point(x);
      if (hx > 0) {
        long hmax = 0;
        for (const auto& r : inv)
          for (const auto& v : r)
            if (!v.is_zero()) hmax = std::max(hmax, height(v));
        xt[i] = make_rat(hmax, hx);
      }
    });
    pr.height_checked = stable.size();
    for (std::size_t i = 0; i < stable.size(); ++i) {
      pr.weil_checked += weil_ok[i];
      pr.weil_excluded += weil_skip[i];
      if (xt[i]) {
        pr.xi_tilde_end = xt[i];
        pr.xi_tilde_max = std::max(pr.xi_tilde_max, *xt[i]);
      }
    }

    std::vector<char> local_ok(A0.size());
    parallel_for(A0.size(), opt.threads, [&](std::size_t i) {
      auto forms = nf.forms(A0[i]);
      ProjPoint x = eval_point(cfg.xs, A0[i]);
      auto J = select_J(p, forms, x);
      local_ok[i] = check_local_inequality(p, J, forms, x, invert_forms(J, forms)).holds;
    });
    for (std::size_t i = 0; i < A0.size(); ++i)
      if (!local_ok[i]) throw IdentityFailure("local inequality fails at " + p.to_string() + ", alpha=" + std::to_string(A0[i]));
    pr.local_checked = A0.size();
  }

  const Rat factor = Rat(static_cast<long>((cfg.M + 1) * l_s1)) + cfg.delta;
  std::vector<Pending> pending(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    auto& row = pending[i].row;
    row.alpha = W.at(i);
    row.lam.assign(cfg.q, 0);
    if (!inadmissible[i].empty()) {
      row.excluded = true;
      row.note = inadmissible[i];
      try {
        row.h_x = height_point(eval_point(cfg.xs, row.alpha));
      } catch (const Error&) {
      }
      return;
    }
    ProjPoint x = eval_point(cfg.xs, row.alpha);
    auto forms = eval_forms(cfg.family, row.alpha);
    row.h_x = height_point(x);
    for (std::size_t j = 0; j < cfg.q; ++j) row.lam[j] = proximity(x, forms[j], S);
    for (const auto& pr : runs)
      if (!pr.own_stable.count(row.alpha)) {
        row.excluded = true;
        row.note = "selection J not stable at " + pr.sel.place.to_string();
        return;
      }
    long sum = 0;
    for (const auto& pr : runs)
      for (std::size_t j : pr.sel.J) sum += weil(x, forms[j], pr.sel.place);
    row.lhs = static_cast<long>(l_s) * sum;
    pending[i].base = factor * Rat(height_point(product_point(basis.eval(row.alpha), x)));
    set_ratio(row);
  });
  finalize(rep, pending, cfg);
  for (const auto& pr : runs)
    if (!pr.transfer.products_independent) {
      rep.message += (rep.message.empty() ? "" : "; ") + std::string("products b_mu x_nu are K-dependent at ") +
                     pr.sel.place.to_string() + ", so the fixed-target step does not apply there";
    }

  Json d;
  d["s"] = basis.choice.s;
  d["l_s"] = l_s;
  d["l_s1"] = l_s1;
  d["dims"] = basis.choice.dims;
  d["xis"] = Json::array();
  for (const auto& xi : basis.xis)
    d["xis"].push_back(xi.expr().uses_index() ? xi.to_string() : xi.expr().eval().to_string());
  d["basis"] = Json::array();
  for (const auto& e : basis.b) d["basis"].push_back(monomial_to_string(e));
  d["admissible"] = A0.size();
  d["common_stable"] = A1.size();
  d["effective_epsilon"] = to_string(factor / Rat(static_cast<long>(l_s)) - Rat(static_cast<long>(cfg.M + 1)));
  d["places"] = Json::array();
  for (const auto& pr : runs) {
    Json pj;
    pj["place"] = pr.sel.place.to_string();
    pj["J"] = Json::array();
    for (std::size_t j : pr.sel.J) pj["J"].push_back(j + 1);
    pj["stable"] = pr.own_stable.size();
    pj["selections_seen"] = pr.sel.group_count;
    pj["C"] = Json::array();
    for (const auto& r : pr.transfer.C) {
      Json jr = Json::array();
      for (const auto& v : r) jr.push_back(to_string(v));
      pj["C"].push_back(jr);
    }
    pj["padding_columns"] = Json::array();
    for (std::size_t c : pr.derived.padding_columns) pj["padding_columns"].push_back(c + 1);
    pj["transfer_verified"] = pr.transfer.verified;
    pj["products_independent"] = pr.transfer.products_independent;
    pj["height_checked"] = pr.height_checked;
    pj["weil_checked"] = pr.weil_checked;
    pj["weil_excluded"] = pr.weil_excluded;
    pj["local_checked"] = pr.local_checked;
    pj["xi_tilde_smallness_end"] = pr.xi_tilde_end ? Json(to_string(*pr.xi_tilde_end)) : Json();
    pj["xi_tilde_smallness_max"] = to_string(pr.xi_tilde_max);
    d["places"].push_back(pj);
  }
  rep.details = d;
  return rep;
}

VerificationReport run(const ExperimentConfig& cfg, const RunOptions& opt) {
  switch (cfg.mode) {
    case Mode::Verify:
      return run_verify(cfg, opt);
    case Mode::Wang:
      return run_wang_check(cfg, opt);
    case Mode::Reduce:
      return run_reduction(cfg, opt);
  }
  return run_verify(cfg, opt);
}

}  // namespace ffdio
