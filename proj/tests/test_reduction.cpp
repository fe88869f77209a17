#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ffdio/reduction.hpp"
#include "test_util.hpp"

using namespace ffdio;

namespace {

const PrimeDivisor inf = PrimeDivisor::infinity();
PrimeDivisor place(const char* s) { return PrimeDivisor::parse(s); }
ProjPoint X(const char* s) { return ProjPoint::parse(s); }
LinearForm L(const char* s) { return LinearForm::parse(s); }
RatFunc R(const char* s) { return parse_ratfunc(s); }

MovingHyperplaneFamily family(const std::vector<std::vector<const char*>>& rows) {
  MovingHyperplaneFamily F;
  for (const auto& r : rows) {
    std::vector<Sequence> row;
    for (const char* s : r) row.push_back(Sequence::parse(s));
    F.rows.push_back(std::move(row));
  }
  return F;
}

PointSequence points(const std::vector<const char*>& coords) {
  PointSequence xs;
  for (const char* s : coords) xs.coords.push_back(Sequence::parse(s));
  return xs;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> a;
  for (std::int64_t i = lo; i <= hi; ++i) a.push_back(i);
  return a;
}

// The Steinmetz basis the way the harness builds it: distinct nonzero xi on
// the given indices, then choose_s and extend_basis.
ProductBasis make_basis(const NormalizedFamily& nf, const std::vector<std::int64_t>& alphas, const Rat& delta) {
  ProductBasis basis;
  std::vector<std::vector<RatFunc>> values;
  for (const auto& row : nf.rows)
    for (const auto& xi : row.xi) {
      std::vector<RatFunc> v;
      for (std::int64_t a : alphas) v.push_back(xi(a));
      bool zero = std::all_of(v.begin(), v.end(), [](const RatFunc& r) { return r.is_zero(); });
      if (zero || std::find(values.begin(), values.end(), v) != values.end()) continue;
      values.push_back(v);
      basis.xis.push_back(xi);
    }
  Window w{alphas.front(), alphas.back()};
  basis.choice = choose_s(values, delta, w, 12);
  basis.b = extend_basis(dim_L(values, basis.choice.s, w), dim_L(values, basis.choice.s + 1, w), values);
  return basis;
}

}  // namespace

TEST_CASE("select_J examples") {
  std::vector<LinearForm> forms = {L("[1, 0]"), L("[0, 1]"), L("[1, 1]")};
  CHECK(form_orders(place("t"), forms, X("[1 : t]")) == std::vector<long>{0, 1, 0});
  CHECK(select_J(place("t"), forms, X("[1 : t]")) == std::vector<std::size_t>{1, 0});
  CHECK(select_J(place("t-5"), forms, X("[1 : t]")) == std::vector<std::size_t>{0, 1});
  CHECK(form_orders(inf, forms, X("[1 : t]")) == std::vector<long>{0, -1, -1});
  CHECK(select_J(inf, forms, X("[1 : t]")) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(select_J(inf, {L("[1, -1]"), L("[0, 1]")}, X("[1 : 1]")), DomainError);
}

TEST_CASE("stabilize_J examples") {
  auto F = family({{"1", "0"}, {"0", "1"}, {"1", "1"}});
  NormalizedFamily nf = normalize_xi(F, Window{1, 10});
  PlaceSelection all = stabilize_J(place("t"), Window{1, 10}, nf, points({"1", "t^a"}));
  CHECK(all.J == std::vector<std::size_t>{1, 0});
  CHECK(all.stable_subset == range(1, 10));
  CHECK(all.group_count == 1);

  // x = [1 : 1] for alpha <= 6 and [1 : t^k] after: a 60/40 split.
  PlaceSelection split = stabilize_J(place("t"), Window{1, 10}, nf, points({"1", "t^floor_div(a,7)"}));
  CHECK(split.J == std::vector<std::size_t>{0, 1});
  CHECK(split.stable_subset == range(1, 6));
  CHECK(split.group_count == 2);

  PlaceSelection one = stabilize_J(place("t"), Window{4, 4}, nf, points({"1", "t^a"}));
  CHECK(one.stable_subset == std::vector<std::int64_t>{4});

  // x on X_0 - X_1 at alpha = 0 only: that alpha is skipped.
  auto G = family({{"1", "0"}, {"0", "1"}, {"1", "-1"}});
  PlaceSelection skip = stabilize_J(inf, Window{0, 5}, normalize_xi(G, Window{0, 5}), points({"1", "t^a"}));
  CHECK(skip.skipped == std::vector<std::int64_t>{0});
  CHECK(skip.stable_subset == range(1, 5));
}

TEST_CASE("invert_forms examples") {
  CHECK(invert_forms({0, 1}, {L("[1, 0]"), L("[0, 1]")}) == identity_matrix(2));
  KMatrix half = {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 2)}};
  CHECK(invert_forms({0, 1}, {L("[1, 1]"), L("[1, -1]")}) == half);
  CHECK(invert_forms({1, 0}, {L("[1, 1]"), L("[1, -1]")}) == KMatrix{{Rat(1, 2), Rat(1, 2)}, {Rat(-1, 2), Rat(1, 2)}});
  CHECK_THROWS_AS(invert_forms({0, 1}, {L("[1, 0]"), L("[t, 0]")}), SingularMatrix);
}

TEST_CASE("check_local_inequality examples") {
  std::vector<LinearForm> forms = {L("[1, 0]"), L("[0, 1]"), L("[1, 1]")};
  ProjPoint x = X("[1 : t]");
  auto J = select_J(place("t"), forms, x);
  LocalInequality r = check_local_inequality(place("t"), J, forms, x, invert_forms(J, forms));
  CHECK(r.lhs == -1);
  CHECK(r.rhs == -1);
  CHECK(r.holds);

  std::vector<LinearForm> square = {L("[1, t]"), L("[t^2, 1]")};
  ProjPoint y = X("[t : 1/(t+1)]");
  for (const auto& p : {place("t"), place("t+1"), inf}) {
    auto K = select_J(p, square, y);
    LocalInequality s = check_local_inequality(p, K, square, y, invert_forms(K, square));
    CHECK(s.lhs == s.rhs);
  }
}

TEST_CASE("local inequality holds on random instances") {
  std::mt19937_64 rng(51);
  const std::vector<PrimeDivisor> places = {place("t"), place("t-1"), place("t^2+1"), inf};
  int checked = 0;
  while (checked < 150) {
    std::size_t M = static_cast<std::size_t>(test::uniform(rng, 1, 2));
    std::size_t q = M + 1 + static_cast<std::size_t>(test::uniform(rng, 0, 3));
    std::vector<RatFunc> xc;
    for (std::size_t i = 0; i <= M; ++i) xc.push_back(test::random_nonzero_ratfunc(rng, 3, 3));
    ProjPoint x(xc);
    std::vector<LinearForm> forms;
    for (std::size_t j = 0; j < q; ++j) {
      std::vector<RatFunc> c;
      for (std::size_t i = 0; i <= M; ++i) c.push_back(test::random_ratfunc(rng, 2, 3));
      if (std::all_of(c.begin(), c.end(), [](const RatFunc& v) { return v.is_zero(); })) c[0] = 1;
      forms.emplace_back(c);
    }
    bool on_form = false;
    for (const auto& f : forms) on_form = on_form || f.apply(x).is_zero();
    if (on_form) continue;
    for (const auto& p : places) {
      auto J = select_J(p, forms, x);
      KMatrix inv;
      try {
        inv = invert_forms(J, forms);
      } catch (const SingularMatrix&) {
        continue;
      }
      ++checked;
      CHECK(check_local_inequality(p, J, forms, x, inv).holds);
    }
  }
}

TEST_CASE("product_point and height_P_decomposition examples") {
  CHECK(product_point({1}, X("[1 : t]")).to_string() == X("[1 : t]").to_string());
  ProjPoint P = product_point({1, R("t")}, X("[1 : t]"));
  REQUIRE(P.coords().size() == 4);
  CHECK(P[0] == RatFunc(1));
  CHECK(P[1] == R("t"));
  CHECK(P[2] == R("t"));
  CHECK(P[3] == R("t^2"));
  ProjPoint Q = product_point({1, R("t")}, X("[1 : t^2 : t^4]"));
  std::vector<RatFunc> expect = {1, R("t"), R("t^2"), R("t^3"), R("t^4"), R("t^5")};
  CHECK(std::equal(Q.coords().begin(), Q.coords().end(), expect.begin(), expect.end()));

  auto check = [](std::vector<RatFunc> b, const char* x, long hP, long hx, long hb) {
    HeightDecomposition d = height_P_decomposition(b, X(x));
    CHECK(d.h_P == hP);
    CHECK(d.h_x == hx);
    CHECK(d.h_b == hb);
  };
  check({1}, "[1 : t]", 1, 1, 0);
  check({1, R("t")}, "[1 : t]", 2, 1, 1);
  check({1, R("t")}, "[1 : t^5]", 6, 5, 1);
  check({R("t+1"), R("1/t")}, "[t : (t-1)/t^2 : 3]", 5, 3, 2);
}

TEST_CASE("transfer for fixed forms in P^1 is a permutation") {
  auto F = family({{"1", "0"}, {"0", "1"}, {"1", "1"}});
  Window w{1, 12};
  NormalizedFamily nf = normalize_xi(F, w);
  auto alphas = range(1, 12);
  ProductBasis basis = make_basis(nf, alphas, Rat(1));
  CHECK(basis.choice.l_s == 1);
  CHECK(basis.choice.l_s1 == 1);
  PlaceSelection sel = stabilize_J(place("t"), alphas, nf, points({"1", "t^a"}));
  TransferMatrix t = build_transfer(sel, nf, basis, points({"1", "t^a"}), alphas);
  CHECK(t.C == std::vector<std::vector<Rat>>{{0, 1}, {1, 0}});
  CHECK(t.verified == 12);
  CHECK(t.products_independent);

  DerivedFamily d = derive_and_pad(t);
  CHECK(d.padding_columns.empty());
  for (std::int64_t a : alphas) {
    ProjPoint x = eval_point(points({"1", "t^a"}), a);
    auto b = basis.eval(a);
    for (std::size_t l = 0; l < 2; ++l) {
      WeilTransfer wt = weil_transfer_check(place("t"), t, l, 0, b, x, eval_form(F, t.J[l], a), nf.form(t.J[l], a));
      CHECK(wt.holds);
      CHECK(wt.delta == 0);
      CHECK(wt.lhs == wt.lambda);
    }
  }
}

TEST_CASE("transfer on the xi = {1, t} instance, checked by direct expansion") {
  // X_0, X_1, X_0 + t X_1: the xi are 1 and t, so s = 0 at delta = 1 and b = {1, t}.
  auto F = family({{"1", "0"}, {"0", "1"}, {"1", "t"}});
  auto xs = points({"1", "t^a"});
  auto alphas = range(1, 20);
  NormalizedFamily nf = normalize_xi(F, Window{1, 20});
  ProductBasis basis = make_basis(nf, alphas, Rat(1));
  REQUIRE(basis.choice.s == 0);
  REQUIRE(basis.choice.l_s == 1);
  REQUIRE(basis.choice.l_s1 == 2);

  for (const auto& p : {place("t"), inf, place("t+1")}) {
    PlaceSelection sel = stabilize_J(p, alphas, nf, xs);
    TransferMatrix t = build_transfer(sel, nf, basis, xs, alphas);
    CHECK_FALSE(t.products_independent);  // b_2 x_0 = t b_1 x_0 over K
    DerivedFamily d = derive_and_pad(t);
    CHECK(d.rows.size() == 4);
    CHECK(d.padding_columns.size() == 2);

    for (std::int64_t a : sel.stable_subset) {
      ProjPoint x = eval_point(xs, a);
      auto b = basis.eval(a);
      ProjPoint P = product_point(b, x);
      for (std::size_t l = 0; l < 2; ++l) {
        // sum_c C[l][c] P_c against b_1 * h_{J[l]}(x), expanded by hand.
        RatFunc lhs;
        for (std::size_t c = 0; c < 4; ++c) lhs += RatFunc(t.C[l][c]) * P[c];
        const auto& row = F.rows[t.J[l]];
        RatFunc h = row[0](a) * x[0] + row[1](a) * x[1];
        CHECK(lhs == b[0] * h);

        WeilTransfer wt = weil_transfer_check(p, t, l, 0, b, x, eval_form(F, t.J[l], a), nf.form(t.J[l], a));
        CHECK(wt.holds);
        CHECK(wt.lhs == wt.lambda + wt.delta);
      }
      HeightDecomposition hd = height_P_decomposition(b, x);
      CHECK(hd.h_P == hd.h_x + hd.h_b);
    }
  }
}

TEST_CASE("transfer and Weil identities on a slowly moving family") {
  auto F = family({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}, {"1", "t^(ilog2(a))", "2"},
                   {"-1", "3", "t^(ilog2(a))+1"}});
  auto xs = points({"1", "t^a", "(t+1)^(2*a)"});
  auto alphas = range(4, 40);
  NormalizedFamily nf = normalize_xi(F, Window{4, 40});
  ProductBasis basis = make_basis(nf, alphas, Rat(1, 2));
  CHECK(basis.choice.s >= 1);
  std::size_t weil_checked = 0;
  for (const auto& p : {place("t"), place("t+1"), place("t^2+1"), inf}) {
    PlaceSelection sel = stabilize_J(p, alphas, nf, xs);
    TransferMatrix t = build_transfer(sel, nf, basis, xs, alphas);
    DerivedFamily d = derive_and_pad(t);
    CHECK(d.derived == 3 * basis.choice.l_s);
    CHECK(d.rows.size() == 3 * basis.choice.l_s1);
    for (std::int64_t a : sel.stable_subset) {
      ProjPoint x = eval_point(xs, a);
      auto b = basis.eval(a);
      auto forms = nf.forms(a);
      CHECK(transfer_identity_holds(t, b, x, forms));
      for (std::size_t l = 0; l < 3; ++l)
        for (std::size_t j = 0; j < t.l_s; ++j) {
          WeilTransfer wt = weil_transfer_check(p, t, l, j, b, x, eval_form(F, t.J[l], a), forms[t.J[l]]);
          CHECK(wt.holds);
          ++weil_checked;
        }
    }
  }
  CHECK(weil_checked > 100);
}

TEST_CASE("derive_and_pad examples") {
  TransferMatrix t;
  t.M = 1;
  t.l_s = 1;
  t.l_s1 = 2;
  t.C = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  DerivedFamily d = derive_and_pad(t);
  CHECK(d.derived == 2);
  CHECK(d.padding_columns == std::vector<std::size_t>{2, 3});
  CHECK(d.form(2).to_string() == L("[0, 0, 1, 0]").to_string());

  t.l_s1 = 1;
  t.C = {{0, 1}, {1, 0}};
  CHECK(derive_and_pad(t).padding_columns.empty());

  t.l_s1 = 2;
  t.C = {{1, 2, 0, 0}, {2, 4, 0, 0}};
  CHECK_THROWS_AS(derive_and_pad(t), Error);
}
