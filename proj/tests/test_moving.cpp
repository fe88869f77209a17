#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffdio/heights.hpp"
#include "ffdio/moving.hpp"

using namespace ffdio;

namespace {

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

RatFunc R(const char* s) { return parse_ratfunc(s); }

}  // namespace

TEST_CASE("Window parsing") {
  Window w = Window::parse("3..7");
  CHECK(w.lo == 3);
  CHECK(w.hi == 7);
  CHECK(w.size() == 5);
  CHECK(w.to_string() == "3..7");
  CHECK(Window::parse("-2..-2").size() == 1);
  CHECK_THROWS(Window::parse("7..3"));
  CHECK_THROWS(Window::parse("3-7"));
}

TEST_CASE("eval_point examples") {
  CHECK(eval_point(points({"1", "t^a"}), 3).to_string() == ProjPoint({1, R("t^3")}).to_string());
  ProjPoint p = eval_point(points({"1", "t^a", "t^(2*a)"}), 2);
  CHECK(p[1] == R("t^2"));
  CHECK(p[2] == R("t^4"));
  ProjPoint z = eval_point(points({"a-2", "1"}), 2);
  CHECK(z[0].is_zero());
  CHECK(z[1] == RatFunc(1));
  CHECK_THROWS_AS(eval_point(points({"a-2", "0"}), 2), EvalError);
}

TEST_CASE("normalize_xi examples") {
  Window w{1, 10};
  NormalizedFamily a = normalize_xi(family({{"1", "t"}}), w);
  CHECK(a.rows[0].pivot == 0);
  CHECK(a.rows[0].xi[1](4) == R("t"));

  NormalizedFamily b = normalize_xi(family({{"0", "t", "1"}}), w);
  CHECK(b.rows[0].pivot == 1);
  CHECK(b.rows[0].xi[0](4).is_zero());
  CHECK(b.rows[0].xi[1](4) == RatFunc(1));
  CHECK(b.rows[0].xi[2](4) == R("1/t"));

  // a-5 vanishes at alpha = 5 only.
  CHECK(normalize_xi(family({{"a-5", "1"}}), Window{1, 10}).rows[0].pivot == 1);
  NormalizedFamily c = normalize_xi(family({{"a-5", "1"}}), Window{6, 20});
  CHECK(c.rows[0].pivot == 0);
  CHECK(c.rows[0].exceptions.empty());
  NormalizedFamily d = normalize_xi(family({{"a-5", "1"}}), Window{1, 10}, 1);
  CHECK(d.rows[0].pivot == 0);
  CHECK(d.rows[0].exceptions == std::vector<std::int64_t>{5});
  CHECK_THROWS_AS(d.form(0, 5), DomainError);

  CHECK_THROWS_AS(normalize_xi(family({{"a-5", "a-6"}}), Window{1, 10}), DomainError);
}

TEST_CASE("normalized rows times the pivot reproduce the original coefficients") {
  auto F = family({{"t^a+1", "t", "a"}, {"0", "a*t-1", "t^2"}, {"2", "-t^(ilog2(a))", "1/(t+a)"}});
  Window w{1, 30};
  NormalizedFamily nf = normalize_xi(F, w);
  for (std::int64_t a = w.lo; a <= w.hi; ++a)
    for (std::size_t j = 0; j < F.q(); ++j) {
      RatFunc pivot = F.rows[j][nf.rows[j].pivot](a);
      LinearForm L = nf.form(j, a);
      for (std::size_t l = 0; l < L.coeffs().size(); ++l) CHECK(L[l] * pivot == F.rows[j][l](a));
    }
}

TEST_CASE("general_position_check examples") {
  CHECK(general_position_check(family({{"1", "0"}, {"0", "1"}, {"1", "1"}}), 0));
  CHECK_FALSE(general_position_check(family({{"1", "0"}, {"0", "1"}, {"0", "t"}}), 0));
  CHECK(general_position_check(family({{"1", "0"}, {"0", "1"}, {"1", "t^a"}}), 0));
  // X_0 - X_1 coincides with X_0 - a X_1 at a = 1 only.
  auto F = family({{"1", "0"}, {"1", "-1"}, {"1", "-a"}});
  CHECK_FALSE(general_position_check(F, 1));
  CHECK(general_position_check(F, 2));
}

TEST_CASE("general position is invariant under rescaling a row by a sequence") {
  auto F = family({{"1", "0", "t"}, {"0", "1", "a"}, {"1", "1", "1"}, {"t^a", "2", "a-3"}});
  auto G = F;
  for (auto& c : G.rows[3]) c = Sequence(Expr::product(c.expr(), Expr::parse("t^a+a")));
  for (auto& c : G.rows[1]) c = Sequence(Expr::product(c.expr(), Expr::parse("1/(t-a)")));
  for (std::int64_t a = 0; a <= 12; ++a) CHECK(general_position_check(F, a) == general_position_check(G, a));
}

TEST_CASE("smallness_report examples") {
  auto constant = family({{"1", "0"}, {"0", "1"}, {"1", "1"}});
  WindowVerdict v = smallness_report(constant, points({"1", "t^a"}), Window{1, 40}, Rat(1, 10));
  CHECK(v.holds);
  CHECK(v.statistic == 0);

  auto slow = family({{"1", "0"}, {"0", "1"}, {"1", "t^(ilog2(a))"}});
  WindowVerdict s = smallness_report(slow, points({"1", "t^(2*a)"}), Window{8, 256}, Rat(1, 5));
  CHECK(s.holds);
  CHECK(s.statistic == make_rat(8, 512));

  auto fast = family({{"1", "0"}, {"0", "1"}, {"1", "t^a"}});
  WindowVerdict f = smallness_report(fast, points({"1", "t^(2*a)"}), Window{8, 256}, Rat(1, 5));
  CHECK_FALSE(f.holds);
  CHECK(f.statistic == Rat(1, 2));

  // h(x) = 0 everywhere on the second half leaves nothing to judge.
  CHECK_THROWS_AS(smallness_report(slow, points({"1", "1"}), Window{8, 20}, Rat(1, 5)), DomainError);
}

TEST_CASE("coherence_probe examples") {
  Window w{1, 40};
  CHECK(coherence_probe(family({{"1", "0"}, {"0", "1"}, {"1", "2"}}), w, 1).holds);
  CHECK(coherence_probe(family({{"1", "0"}, {"0", "1"}, {"1", "2"}}), w, 2).holds);
  CHECK(coherence_probe(family({{"1", "0"}, {"0", "1"}, {"a-5", "1"}}), w, 1).holds);
  WindowVerdict v = coherence_probe(family({{"1", "0"}, {"0", "1"}, {"a-2*floor_div(a,2)", "1"}}), w, 1);
  CHECK_FALSE(v.holds);
  CHECK(v.statistic >= 1);
}

TEST_CASE("nondegeneracy_probe examples") {
  Window w{1, 10};
  CHECK(nondegeneracy_probe(points({"1", "t^a"}), w).holds);
  WindowVerdict bad = nondegeneracy_probe(points({"t^a", "2*t^a"}), w);
  CHECK_FALSE(bad.holds);
  CHECK(bad.statistic == 1);
  CHECK(nondegeneracy_probe(points({"1", "a*t"}), w).holds);
  CHECK_FALSE(nondegeneracy_probe(points({"1", "t", "t^a", "t^a+t"}), w).holds);
}
