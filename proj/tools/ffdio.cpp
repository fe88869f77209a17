// ffdio: command-line front end for the exact toolkit and the window harness.
//
//   ffdio ord '(t^2-1)/t' 't-1'
//   ffdio weil '[1 : t^3]' '[0, 1]' t
//   ffdio lspace --xis 1 t --s 3 --window 1..40
//   ffdio generate fixed-fermat --M 1 > fermat.json
//   ffdio verify fermat.json --epsilon 1/10 --format csv
//
// Report subcommands exit 0 on PASS, 2 on FAIL, 3 when a hypothesis probe
// refuses the run; any other error exits 1.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ffdio/config.hpp"
#include "ffdio/generate.hpp"
#include "ffdio/harness.hpp"
#include "ffdio/heights.hpp"
#include "ffdio/places.hpp"
#include "ffdio/report.hpp"
#include "ffdio/steinmetz.hpp"

using namespace ffdio;

namespace {

struct RunFlags {
  std::string config_path;
  std::optional<std::string> window, epsilon, delta, infinite_subset;
  std::string format = "csv";
  unsigned threads = 1;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
}

int run_report(Mode mode, const RunFlags& f) {
  Json j = read_json(f.config_path);
  if (f.window) j["window"] = *f.window;
  if (f.epsilon) j["epsilon"] = *f.epsilon;
  if (f.delta) j["delta"] = *f.delta;
  if (f.infinite_subset) j["thresholds"]["infinite_subset"] = *f.infinite_subset;
  j["mode"] = to_string(mode);
  ExperimentConfig cfg = parse_experiment(j, mode);

  VerificationReport rep = run(cfg, RunOptions{f.threads});
  if (f.format == "json")
    std::cout << report_json(rep).dump(2) << '\n';
  else
    std::cout << report_csv(rep);
  std::cerr << verdict_line(rep) << '\n';
  return exit_code(rep.verdict);
}

std::vector<Sequence> parse_xis(const std::vector<std::string>& texts) {
  std::vector<Sequence> out;
  for (const auto& s : texts) out.push_back(Sequence::parse(s));
  return out;
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("config", f.config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--window", f.window, "override the window, A..B");
  cmd->add_option("--epsilon", f.epsilon, "override epsilon, p/q");
  cmd->add_option("--delta", f.delta, "override delta, p/q");
  cmd->add_option("--infinite-subset", f.infinite_subset, "accept when this fraction of alpha pass, p/q");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Diophantine approximation over Q(t)"};
  app.require_subcommand(1);
  int status = 0;

  std::string rf_text, prime_text, obj_text, form_text;
  auto* ord = app.add_subcommand("ord", "order of a rational function at a place");
  ord->add_option("ratfunc", rf_text)->required();
  ord->add_option("prime", prime_text, "monic irreducible polynomial or inf")->required();
  ord->callback([&] {
    std::cout << ord_at(parse_ratfunc(rf_text), PrimeDivisor::parse(prime_text)) << '\n';
  });

  auto* div = app.add_subcommand("divisor", "divisor of a rational function");
  div->add_option("ratfunc", rf_text)->required();
  div->callback([&] {
    Divisor d = divisor_of(parse_ratfunc(rf_text));
    std::cout << d.to_string() << "\ndegree " << d.degree() << '\n';
  });

  auto* ht = app.add_subcommand("height", "height of [x0 : ... : xM], of a form [a0, ..., aM], or of a ratfunc");
  ht->add_option("object", obj_text)->required();
  ht->callback([&] {
    if (obj_text.find(':') != std::string::npos)
      std::cout << height_point(ProjPoint::parse(obj_text)) << '\n';
    else if (obj_text.find('[') != std::string::npos)
      std::cout << height_form(LinearForm::parse(obj_text)) << '\n';
    else
      std::cout << height(parse_ratfunc(obj_text)) << '\n';
  });

  auto* wl = app.add_subcommand("weil", "Weil function lambda_{p,H}(x)");
  wl->add_option("point", obj_text)->required();
  wl->add_option("form", form_text)->required();
  wl->add_option("prime", prime_text)->required();
  wl->callback([&] {
    std::cout << weil(ProjPoint::parse(obj_text), LinearForm::parse(form_text), PrimeDivisor::parse(prime_text))
              << '\n';
  });

  std::vector<std::string> xis_text;
  std::string window_text = "1..40", delta_text = "1";
  unsigned s = 0, s_max = 12, threads = 1;
  auto* ls = app.add_subcommand("lspace", "dimension and basis of L(s) on a window");
  ls->add_option("--xis", xis_text, "xi sequences (index expressions)")->required()->expected(1, -1);
  ls->add_option("--s", s, "monomial degree")->required();
  ls->add_option("--window", window_text, "A..B");
  ls->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
  ls->callback([&] {
    auto xis = parse_xis(xis_text);
    MonomialSpace sp = dim_L(xis, s, Window::parse(window_text), threads);
    std::cout << "l(" << s << ") = " << sp.dim << (sp.stabilized ? "" : " (rank not stabilized on the window)")
              << "\nbasis:";
    for (std::size_t b : sp.basis) std::cout << ' ' << monomial_to_string(sp.generators[b]);
    std::cout << '\n';
  });

  auto* cs = app.add_subcommand("choose-s", "least s with l(s+1)/l(s) < 1 + delta");
  cs->add_option("--xis", xis_text, "xi sequences (index expressions)")->required()->expected(1, -1);
  cs->add_option("--delta", delta_text, "p/q");
  cs->add_option("--window", window_text, "A..B");
  cs->add_option("--s-max", s_max);
  cs->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
  cs->callback([&] {
    auto xis = parse_xis(xis_text);
    SChoice c = choose_s(xis, parse_rat(delta_text), Window::parse(window_text), s_max, threads);
    std::cout << "s = " << c.s << "\nl(s) = " << c.l_s << "\nl(s+1) = " << c.l_s1 << "\ndims:";
    for (auto d : c.dims) std::cout << ' ' << d;
    std::cout << '\n';
  });

  RunFlags verify_flags, wang_flags, reduce_flags;
  auto* vf = app.add_subcommand("verify", "moving-target inequality on a window");
  add_run_flags(vf, verify_flags);
  vf->callback([&] { status = run_report(Mode::Verify, verify_flags); });
  auto* wg = app.add_subcommand("wang", "fixed-target inequality with max over independent subsets");
  add_run_flags(wg, wang_flags);
  wg->callback([&] { status = run_report(Mode::Wang, wang_flags); });
  auto* rd = app.add_subcommand("reduce", "full reduction pipeline with exact identity checks");
  add_run_flags(rd, reduce_flags);
  rd->callback([&] { status = run_report(Mode::Reduce, reduce_flags); });

  std::string profile;
  GenerateParams gp;
  std::optional<std::size_t> gen_M, gen_q;
  std::optional<std::string> gen_window;
  auto* gen = app.add_subcommand("generate", "emit an instance config");
  gen->add_option("profile", profile)->required()->check(CLI::IsMember(profile_names()));
  gen->add_option("--M", gen_M, "projective dimension");
  gen->add_option("--q", gen_q, "number of hyperplanes");
  gen->add_option("--seed", gp.seed, "generator seed");
  gen->add_option("--window", gen_window, "A..B");
  gen->callback([&] {
    gp.M = gen_M;
    gp.q = gen_q;
    if (gen_window) gp.window = Window::parse(*gen_window);
    std::cout << generate(profile, gp).dump(2) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "ffdio: " << e.what() << '\n';
    return 1;
  }
  return status;
}
