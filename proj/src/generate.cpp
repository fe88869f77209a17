#include "ffdio/generate.hpp"

#include <algorithm>
#include <set>

#include "ffdio/linalg.hpp"

namespace ffdio {

long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<std::string> profile_names() { return {"fixed-fermat", "slow-coeff", "random-gp", "random-moving"}; }

namespace {

std::string power_point(std::size_t l) {
  if (l == 0) return "1";
  if (l == 1) return "t^a";
  return "t^(" + std::to_string(l) + "*a)";
}

Json base(const std::string& profile, std::size_t M, std::size_t q, const Window& w, const std::string& eps,
          const std::string& delta) {
  Json j;
  j["mode"] = "verify";
  j["M"] = M;
  j["q"] = q;
  j["S"] = {"t", "inf"};
  j["points"] = Json::array();
  for (std::size_t l = 0; l <= M; ++l) j["points"].push_back(power_point(l));
  j["hyperplanes"] = Json::array();
  j["window"] = {w.lo, w.hi};
  j["epsilon"] = eps;
  j["delta"] = delta;
  j["s_max"] = 12;
  j["thresholds"] = {{"tail_fraction", "1/4"}, {"smallness_delta", "1/10"}, {"coherence_degree", 1}};
  j["seed"] = Json();
  j["profile"] = profile;
  return j;
}

Json unit_row(std::size_t M, std::size_t l) {
  Json row = Json::array();
  for (std::size_t k = 0; k <= M; ++k) row.push_back(k == l ? "1" : "0");
  return row;
}

long ipow(long b, std::size_t e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

void check_shape(std::size_t M, std::size_t q, std::size_t min_extra) {
  if (M < 1 || M > 4) throw ConfigError("M", "generators support 1 <= M <= 4");
  if (q < M + 1 + min_extra || q > 12)
    throw ConfigError("q", "need " + std::to_string(M + 1 + min_extra) + " <= q <= 12 for this profile");
}

bool all_minors_nonzero(const std::vector<std::vector<long>>& rows, std::size_t n) {
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    KMatrix m;
    for (std::size_t i : pick) {
      std::vector<RatFunc> r;
      for (long v : rows[i]) r.emplace_back(v);
      m.push_back(std::move(r));
    }
    if (determinant(m).is_zero()) return false;
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == rows.size() - n + k - 1) --k;
    if (k == 0) return true;
    ++pick[k - 1];
    for (std::size_t i = k; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
}

Json fixed_fermat(const GenerateParams& p) {
  std::size_t M = p.M.value_or(1), q = p.q.value_or(M + 2);
  check_shape(M, q, 1);
  Json j = base("fixed-fermat", M, q, p.window.value_or(Window{1, 200}), "1/10", "1");
  for (std::size_t l = 0; l <= M; ++l) j["hyperplanes"].push_back(unit_row(M, l));
  for (long c = 1; j["hyperplanes"].size() < q; ++c) {
    Json row = Json::array();
    for (std::size_t l = 0; l <= M; ++l) row.push_back(std::to_string(ipow(-c, l)));
    j["hyperplanes"].push_back(row);
  }
  return j;
}

Json slow_coeff(const GenerateParams& p) {
  std::size_t M = p.M.value_or(2), q = p.q.value_or(5);
  check_shape(M, q, 1);
  Json j = base("slow-coeff", M, q, p.window.value_or(Window{8, 256}), "1/2", "1/2");
  for (std::size_t l = 0; l <= M; ++l) j["hyperplanes"].push_back(unit_row(M, l));
  for (long c = 1; j["hyperplanes"].size() < q; ++c) {
    Json row = Json::array();
    for (std::size_t l = 0; l <= M; ++l) {
      std::string coef = std::to_string(ipow(c, l));
      if (l % 2 == 0)
        row.push_back(coef);
      else
        row.push_back(coef == "1" ? "t^(ilog2(a))" : coef + "*t^(ilog2(a))");
    }
    j["hyperplanes"].push_back(row);
  }
  return j;
}

Json random_gp(const GenerateParams& p) {
  std::size_t M = p.M.value_or(2), q = p.q.value_or(M + 3);
  check_shape(M, q, 1);
  std::mt19937_64 rng(p.seed);
  Json j = base("random-gp", M, q, p.window.value_or(Window{1, 100}), "1/10", "1");
  j["seed"] = p.seed;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::vector<long>> rows(q, std::vector<long>(M + 1));
    for (auto& r : rows)
      for (auto& v : r) v = draw(rng, -3, 3);
    if (!all_minors_nonzero(rows, M + 1)) continue;
    for (const auto& r : rows) {
      Json row = Json::array();
      for (long v : r) row.push_back(std::to_string(v));
      j["hyperplanes"].push_back(row);
    }
    return j;
  }
  throw ConfigError("q", "could not draw forms in general position; lower q");
}

Json random_moving(const GenerateParams& p) {
  std::mt19937_64 rng(p.seed);
  std::size_t M = p.M.value_or(static_cast<std::size_t>(draw(rng, 1, 2)));
  std::size_t q = p.q.value_or(static_cast<std::size_t>(draw(rng, static_cast<long>(M) + 2, 6)));
  check_shape(M, q, 1);
  Window w = p.window.value_or(Window{4, 4 + draw(rng, 29, 39)});
  Json j = base("random-moving", M, q, w, "1/2", draw(rng, 0, 1) ? "1" : "1/2");
  j["seed"] = p.seed;
  j["thresholds"]["smallness_delta"] = "1/4";

  const std::vector<std::string> pool = {"t", "t+1", "t^2+1", "inf"};
  std::vector<std::string> S;
  std::size_t count = static_cast<std::size_t>(draw(rng, 1, 3));
  std::vector<std::size_t> order = {0, 1, 2, 3};
  for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + static_cast<std::size_t>(draw(rng, 0, static_cast<long>(3 - i)))]);
  std::sort(order.begin(), order.begin() + static_cast<long>(count));
  for (std::size_t i = 0; i < count; ++i) S.push_back(pool[order[i]]);
  j["S"] = S;

  std::set<std::pair<long, long>> used;
  j["points"] = Json::array({"1"});
  while (j["points"].size() <= M) {
    long k = draw(rng, 0, 2), m = draw(rng, 0, 2);
    if (k + m < 2 || !used.insert({k, m}).second) continue;
    std::string s;
    if (k) s += k == 1 ? "t^a" : "t^(" + std::to_string(k) + "*a)";
    if (m) s += (s.empty() ? "" : "*") + std::string(m == 1 ? "(t+1)^a" : "(t+1)^(" + std::to_string(m) + "*a)");
    j["points"].push_back(s);
  }

  for (int attempt = 0; attempt < 10000; ++attempt) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < q; ++r) {
      Json row = Json::array();
      long lead = draw(rng, 1, 3) * (draw(rng, 0, 1) ? 1 : -1);
      row.push_back(std::to_string(lead));
      for (std::size_t l = 1; l <= M; ++l) {
        long c = draw(rng, -3, 3);
        bool moving = c != 0 && draw(rng, 0, 1);
        row.push_back(!moving ? std::to_string(c) : std::to_string(c) + "*t^(ilog2(a^3))");
      }
      rows.push_back(row);
    }
    j["hyperplanes"] = rows;
    try {
      parse_experiment(j);
      return j;
    } catch (const ConfigError&) {
    }
  }
  throw ConfigError("q", "could not draw moving forms in general position; lower q");
}

}  // namespace

Json generate(const std::string& profile, const GenerateParams& params) {
  if (profile == "fixed-fermat") return fixed_fermat(params);
  if (profile == "slow-coeff") return slow_coeff(params);
  if (profile == "random-gp") return random_gp(params);
  if (profile == "random-moving") return random_moving(params);
  std::string names;
  for (const auto& n : profile_names()) names += (names.empty() ? "" : ", ") + n;
  throw ConfigError("profile", "unknown profile \"" + profile + "\" (known: " + names + ")");
}

}  // namespace ffdio
