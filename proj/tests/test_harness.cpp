#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "ffdio/generate.hpp"
#include "ffdio/harness.hpp"
#include "ffdio/linalg.hpp"
#include "ffdio/report.hpp"

using namespace ffdio;

namespace {

// X_0, X_1, X_0 - X_1 against [1 : t^a] at (t) and infinity.
Json p1_instance(const char* epsilon = "1/10") {
  Json j = Json::parse(R"({
    "mode": "verify", "M": 1, "q": 3, "S": ["t", "inf"],
    "points": ["1", "t^a"],
    "hyperplanes": [["1", "0"], ["0", "1"], ["1", "-1"]],
    "window": [1, 60], "delta": "1"
  })");
  j["epsilon"] = epsilon;
  return j;
}

long brute_wang_lhs(const ExperimentConfig& cfg, std::int64_t a) {
  ProjPoint x = eval_point(cfg.xs, a);
  auto forms = eval_forms(cfg.family, a);
  const std::size_t q = forms.size();
  long total = 0;
  for (const auto& p : cfg.places()) {
    long best = 0;
    for (unsigned mask = 1; mask < (1u << q); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) > cfg.M + 1) continue;
      KMatrix m;
      long sum = 0;
      for (std::size_t j = 0; j < q; ++j)
        if (mask >> j & 1) {
          m.emplace_back(forms[j].coeffs().begin(), forms[j].coeffs().end());
          sum += weil(x, forms[j], p);
        }
      if (rank_over_K_exact(m) == m.size()) best = std::max(best, sum);
    }
    total += best;
  }
  return total;
}

const ProbeSummary& probe(const VerificationReport& r, const std::string& name) {
  for (const auto& p : r.probes)
    if (p.name == name) return p;
  FAIL("missing probe " << name);
  return r.probes.front();
}

}  // namespace

TEST_CASE("config loading and validation") {
  ExperimentConfig cfg = parse_experiment(p1_instance());
  CHECK(cfg.M == 1);
  CHECK(cfg.q == 3);
  CHECK(cfg.S.size() == 2);
  CHECK(cfg.window.size() == 60);
  CHECK(cfg.epsilon == Rat(1, 10));
  CHECK(parse_experiment(cfg.to_json()).to_json() == cfg.to_json());

  const std::string path = "ffdio_test_config.json";
  {
    std::ofstream out(path);
    out << p1_instance().dump();
  }
  CHECK(load_experiment(path).q == 3);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_experiment("does/not/exist.json"), ConfigError);

  Json few = p1_instance();
  few["q"] = 2;
  few["hyperplanes"] = Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})});
  CHECK_THROWS_WITH_AS(parse_experiment(few), doctest::Contains("q > M+1"), ConfigError);

  Json bad = p1_instance();
  bad["hyperplanes"][2][1] = "t + * 2";
  CHECK_THROWS_WITH_AS(parse_experiment(bad), doctest::Contains("hyperplanes[2][1]: syntax error at position 4"),
                       ConfigError);

  Json dependent = p1_instance();
  dependent["hyperplanes"][2] = Json::array({"0", "t"});
  CHECK_THROWS_WITH_AS(parse_experiment(dependent), doctest::Contains("general position"), ConfigError);

  Json window = p1_instance();
  window["window"] = "5..9";
  CHECK(parse_experiment(window).window.size() == 5);
  window["window"] = Json::array({9, 5});
  CHECK_THROWS_AS(parse_experiment(window), ConfigError);

  Json eps = p1_instance();
  eps["epsilon"] = 0.1;
  CHECK_THROWS_WITH_AS(parse_experiment(eps), doctest::Contains("epsilon"), ConfigError);
}

TEST_CASE("run_verify on the P^1 instance gives LHS = 2 alpha") {
  VerificationReport r = run_verify(parse_experiment(p1_instance()));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.fitted_constant == 0);
  CHECK(r.pass_without_constant);
  REQUIRE(r.rows.size() == 60);
  for (const auto& row : r.rows) {
    CHECK(row.lhs == 2 * row.alpha);
    CHECK(row.h_x == row.alpha);
    CHECK(row.ratio == Rat(2));
    CHECK(row.lam == std::vector<long>{row.alpha, row.alpha, 0});
    CHECK_FALSE(row.excluded);
  }

  VerificationReport sharp = run_verify(parse_experiment(p1_instance("0")));
  CHECK(sharp.verdict == Verdict::Pass);
  CHECK(sharp.fitted_constant == 0);
}

TEST_CASE("run_verify with a slowly moving third hyperplane") {
  Json j = p1_instance();
  j["hyperplanes"][2] = Json::array({"1", "-t"});
  j["window"] = Json::array({2, 80});
  VerificationReport r = run_verify(parse_experiment(j));
  CHECK(r.verdict == Verdict::Pass);
  const auto& small = probe(r, "smallness");
  CHECK(small.verdict.holds);
  CHECK(small.verdict.statistic == make_rat(1, 80));
  for (const auto& row : r.rows) CHECK(row.lhs == 2 * row.alpha);
}

TEST_CASE("run_verify refuses when a required probe fails") {
  Json fast = p1_instance();
  fast["hyperplanes"][2] = Json::array({"1", "-t^a"});
  fast["window"] = Json::array({2, 40});
  VerificationReport r = run_verify(parse_experiment(fast));
  CHECK(r.verdict == Verdict::Refused);
  CHECK(r.rows.empty());
  CHECK(exit_code(r.verdict) == 3);
  CHECK(r.message.find("smallness") != std::string::npos);

  Json degenerate = p1_instance();
  degenerate["points"] = Json::array({"t^a", "2*t^a"});
  degenerate["hyperplanes"][2] = Json::array({"1", "1"});
  CHECK(run_verify(parse_experiment(degenerate)).verdict == Verdict::Refused);
}

TEST_CASE("excluded alpha and the infinite-subset rule") {
  // x(alpha) = [1 : alpha - 3] lies on X_1 at alpha = 3.
  Json j = p1_instance();
  j["points"] = Json::array({"t^a", "a-3"});
  j["hyperplanes"][2] = Json::array({"1", "1"});
  j["window"] = Json::array({1, 40});
  ExperimentConfig cfg = parse_experiment(j);
  VerificationReport r = run_verify(cfg);
  REQUIRE(r.rows.size() == 40);
  CHECK(r.rows[2].excluded);
  CHECK(r.rows[2].note == "x lies on H_2");
  CHECK(r.verdict == Verdict::Pass);

  Json k = p1_instance();
  k["thresholds"] = {{"infinite_subset", "1/2"}};
  VerificationReport half = run_verify(parse_experiment(k));
  CHECK(half.verdict == Verdict::Pass);
  CHECK(half.passing_fraction == 1);
}

TEST_CASE("independent_subsets agrees with a brute-force scan") {
  ExperimentConfig base = parse_experiment(generate("random-gp", {2, 8, 3, Window{1, 5}}));
  std::vector<std::vector<LinearForm>> cases = {eval_forms(base.family, 1)};
  // A dependent triple in P^2: X_0, X_1, X_0 + X_1, X_2, X_0 - X_2.
  cases.push_back({LinearForm::parse("[1, 0, 0]"), LinearForm::parse("[0, 1, 0]"), LinearForm::parse("[1, 1, 0]"),
                   LinearForm::parse("[0, 0, 1]"), LinearForm::parse("[1, 0, -1]")});
  for (const auto& forms : cases) {
    auto subsets = independent_subsets(forms, 3);
    std::set<std::vector<std::size_t>> got(subsets.begin(), subsets.end());
    CHECK(got.size() == subsets.size());
    std::set<std::vector<std::size_t>> expect;
    for (unsigned mask = 1; mask < (1u << forms.size()); ++mask) {
      std::vector<std::size_t> J;
      KMatrix m;
      for (std::size_t j = 0; j < forms.size(); ++j)
        if (mask >> j & 1) {
          J.push_back(j);
          m.emplace_back(forms[j].coeffs().begin(), forms[j].coeffs().end());
        }
      if (J.size() <= 3 && rank_over_K_exact(m) == J.size()) expect.insert(J);
    }
    CHECK(got == expect);
  }
  auto dep = independent_subsets(cases[1], 3);
  CHECK(std::find(dep.begin(), dep.end(), std::vector<std::size_t>{0, 1, 2}) == dep.end());
}

TEST_CASE("run_wang_check matches the brute-force maximum") {
  for (const char* profile : {"fixed-fermat", "random-gp"}) {
    for (std::size_t q : {3u, 5u}) {
      GenerateParams gp{1, q, 5, Window{1, 30}};
      Json j = generate(profile, gp);
      ExperimentConfig cfg = parse_experiment(j, Mode::Wang);
      VerificationReport r = run_wang_check(cfg);
      CHECK(r.verdict == Verdict::Pass);
      for (const auto& row : r.rows) CHECK(row.lhs == brute_wang_lhs(cfg, row.alpha));
    }
  }
  GenerateParams gp2{2, 6, 9, Window{1, 12}};
  ExperimentConfig cfg = parse_experiment(generate("random-gp", gp2), Mode::Wang);
  for (const auto& row : run_wang_check(cfg).rows) CHECK(row.lhs == brute_wang_lhs(cfg, row.alpha));
}

TEST_CASE("run_wang_check on the P^1 instance") {
  VerificationReport w = run_wang_check(parse_experiment(p1_instance(), Mode::Wang));
  CHECK(w.verdict == Verdict::Pass);
  for (const auto& row : w.rows) CHECK(row.lhs == 2 * row.alpha);
  CHECK(w.details["full_set_attains_max"] == true);

  // X_1, X_2 and X_1 - X_2 are all close to x at (t), but only two of them
  // are independent together with X_0.
  Json close = Json::parse(R"cfg({
    "mode": "wang", "M": 2, "q": 4, "S": ["t", "inf"],
    "points": ["1", "t^a", "2*t^a + t^(2*a)"],
    "hyperplanes": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["0", "1", "-1"]],
    "window": [1, 30]
  })cfg");
  ExperimentConfig cc = parse_experiment(close);
  VerificationReport c = run_wang_check(cc);
  CHECK(c.verdict == Verdict::Pass);
  CHECK(c.details["full_set_attains_max"] == false);
  for (const auto& row : c.rows) CHECK(row.lhs == brute_wang_lhs(cc, row.alpha));

  Json square = p1_instance();
  square["q"] = 2;
  square["hyperplanes"] = Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})});
  VerificationReport s = run_wang_check(parse_experiment(square, Mode::Wang));
  CHECK(s.details["full_set_attains_max"] == true);
  VerificationReport v = run_verify(parse_experiment(square, Mode::Wang));
  for (std::size_t i = 0; i < s.rows.size(); ++i) CHECK(s.rows[i].lhs == v.rows[i].lhs);
  CHECK(s.fitted_constant == v.fitted_constant);

  Json moving = p1_instance();
  moving["hyperplanes"][2] = Json::array({"1", "-t^(ilog2(a))"});
  CHECK_THROWS_AS(parse_experiment(moving, Mode::Wang), ConfigError);
}

TEST_CASE("run_reduction reproduces run_wang_check for constant forms") {
  for (const char* profile : {"fixed-fermat", "random-gp"}) {
    GenerateParams gp{1, 4, 2, Window{1, 40}};
    Json j = generate(profile, gp);
    VerificationReport red = run_reduction(parse_experiment(j, Mode::Reduce));
    VerificationReport wang = run_wang_check(parse_experiment(j, Mode::Wang));
    REQUIRE(red.verdict == Verdict::Pass);
    CHECK(red.details["l_s"] == 1);
    REQUIRE(red.rows.size() == wang.rows.size());
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      if (red.rows[i].excluded) continue;
      CHECK(red.rows[i].lhs == wang.rows[i].lhs);
    }
  }
}

TEST_CASE("run_reduction on a moving instance with s = 0") {
  Json j = p1_instance();
  j["hyperplanes"][2] = Json::array({"1", "t"});
  j["window"] = Json::array({1, 40});
  VerificationReport r = run_reduction(parse_experiment(j, Mode::Reduce));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.details["s"] == 0);
  CHECK(r.details["l_s"] == 1);
  CHECK(r.details["l_s1"] == 2);
  for (const auto& pl : r.details["places"]) {
    CHECK(pl["transfer_verified"] == 40);
    CHECK(pl["weil_checked"].get<std::size_t>() + pl["weil_excluded"].get<std::size_t>() == 80);
  }
  CHECK(r.message.find("K-dependent") != std::string::npos);
}

TEST_CASE("run_reduction excludes alpha where general position fails") {
  // X_0 - a X_1 coincides with X_0 at alpha = 0.
  Json j = p1_instance();
  j["hyperplanes"][2] = Json::array({"1", "-a"});
  j["window"] = Json::array({0, 30});
  j["thresholds"] = {{"smallness_delta", "1/4"}};
  VerificationReport r = run_reduction(parse_experiment(j, Mode::Reduce));
  REQUIRE(r.rows.size() == 31);
  CHECK(r.rows[0].excluded);
  CHECK(r.rows[0].note == "general position fails");
  CHECK_FALSE(probe(r, "general_position").verdict.holds);
  CHECK(probe(r, "general_position").verdict.exceptions == std::vector<std::int64_t>{0});
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("reports are deterministic across runs and thread counts") {
  for (const char* profile : {"slow-coeff", "random-moving"}) {
    GenerateParams gp;
    gp.seed = 4;
    if (std::string(profile) == "slow-coeff") gp.window = Window{8, 64};
    Json j = generate(profile, gp);
    for (Mode m : {Mode::Verify, Mode::Reduce}) {
      ExperimentConfig cfg = parse_experiment(j, m);
      VerificationReport a = run(cfg, {1}), b = run(cfg, {1}), c = run(cfg, {4});
      CHECK(report_csv(a) == report_csv(b));
      CHECK(report_json(a).dump() == report_json(b).dump());
      CHECK(report_csv(a) == report_csv(c));
      CHECK(report_json(a).dump() == report_json(c).dump());
    }
  }
}

TEST_CASE("report formats") {
  VerificationReport r = run_verify(parse_experiment(p1_instance()));
  std::string csv = report_csv(r);
  CHECK(csv.rfind("alpha,h_x,lhs,rhs,ratio,excluded,lam_1,lam_2,lam_3\n", 0) == 0);
  CHECK(csv.find("\n2,2,4,21/5,2,0,2,2,0\n") != std::string::npos);
  Json j = report_json(r);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["verdict_without_constant"] == "PASS");
  CHECK(j["fitted_constant"] == "0");
  CHECK(j["rows"].size() == 60);
  CHECK(j["rows"][1]["rhs"] == "21/5");
  CHECK(j["config"]["hyperplanes"][2][1] == "-1");
  CHECK(j["probes"].size() == 4);
  CHECK(verdict_line(r).rfind("verify: PASS", 0) == 0);
}

TEST_CASE("generators") {
  Json a = generate("random-gp", {std::nullopt, std::nullopt, 7, std::nullopt});
  Json b = generate("random-gp", {std::nullopt, std::nullopt, 7, std::nullopt});
  CHECK(a.dump() == b.dump());
  CHECK(generate("random-moving", {std::nullopt, std::nullopt, 7, std::nullopt}).dump() ==
        generate("random-moving", {std::nullopt, std::nullopt, 7, std::nullopt}).dump());
  CHECK_THROWS_AS(generate("no-such-profile", {}), ConfigError);

  ExperimentConfig ff = parse_experiment(generate("fixed-fermat", {1, std::nullopt, 1, std::nullopt}));
  ExperimentConfig ref = parse_experiment(p1_instance());
  CHECK(ff.window.lo == 1);
  CHECK(ff.window.hi == 200);
  CHECK(ff.q == 3);
  for (std::int64_t a : {1, 17, 200})
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(eval_form(ff.family, j, a).to_string() == eval_form(ref.family, j, a).to_string());

  ExperimentConfig sc = parse_experiment(generate("slow-coeff", {}));
  CHECK(sc.M == 2);
  CHECK(sc.q == 5);
  for (std::int64_t a = sc.window.lo; a <= sc.window.hi; a += 7) {
    long hx = height_point(eval_point(sc.xs, a));
    CHECK(hx == 2 * a);
    long ilog = 0;
    while ((2L << ilog) <= a) ++ilog;
    for (const auto& f : eval_forms(sc.family, a)) CHECK(height_form(f) <= ilog);
  }
}

TEST_CASE("bundled generators satisfy their hypotheses") {
  std::vector<Json> configs = {generate("fixed-fermat", {}), generate("slow-coeff", {}),
                               generate("random-gp", {std::nullopt, std::nullopt, 3, std::nullopt})};
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    configs.push_back(generate("random-moving", {std::nullopt, std::nullopt, seed, std::nullopt}));
  for (const auto& j : configs) {
    ExperimentConfig cfg = parse_experiment(j);
    CHECK(smallness_report(cfg.family, cfg.xs, cfg.window, cfg.thresholds.smallness_delta).holds);
    CHECK(nondegeneracy_probe(cfg.xs, cfg.window).holds);
  }
}

TEST_CASE("doubling the exponents doubles h and LHS") {
  Json j = generate("fixed-fermat", {1, 4, 1, Window{1, 50}});
  Json k = j;
  k["points"] = Json::array({"1", "t^(2*a)"});
  VerificationReport a = run_verify(parse_experiment(j)), b = run_verify(parse_experiment(k));
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(b.rows[i].h_x == 2 * a.rows[i].h_x);
    CHECK(b.rows[i].lhs == 2 * a.rows[i].lhs);
  }
}
