#include "ffdio/config.hpp"

#include <fstream>
#include <sstream>

namespace ffdio {

Mode parse_mode(const std::string& text) {
  if (text == "verify") return Mode::Verify;
  if (text == "wang") return Mode::Wang;
  if (text == "reduce") return Mode::Reduce;
  throw ConfigError("mode", "unknown mode \"" + text + "\" (expected verify, wang or reduce)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Verify:
      return "verify";
    case Mode::Wang:
      return "wang";
    case Mode::Reduce:
      return "reduce";
  }
  return "verify";
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(key, "missing field");
  return j.at(key);
}

std::size_t get_count(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

Rat get_rat(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (!v.is_string()) throw ConfigError(field, "expected a rational string \"p/q\"");
  try {
    return parse_rat(v.get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

std::string expr_text(const Json& v, const std::string& field) {
  if (!v.is_string() && !v.is_number_integer()) throw ConfigError(field, "expected an expression string");
  return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
}

Sequence get_sequence(const Json& v, const std::string& field) {
  std::string text = expr_text(v, field);
  try {
    return Sequence::parse(text);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

std::string field(const char* base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.M < 1) throw ConfigError("M", "must be at least 1");
  if (cfg.xs.coords.size() != cfg.M + 1)
    throw ConfigError("points", "expected M+1 = " + std::to_string(cfg.M + 1) + " coordinates");
  if (cfg.family.q() != cfg.q) throw ConfigError("hyperplanes", "expected q = " + std::to_string(cfg.q) + " rows");
  for (std::size_t j = 0; j < cfg.q; ++j)
    if (cfg.family.rows[j].size() != cfg.M + 1)
      throw ConfigError(field("hyperplanes", j), "expected M+1 = " + std::to_string(cfg.M + 1) + " coefficients");
  if (cfg.S.empty()) throw ConfigError("S", "the place set must be nonempty");
  for (std::size_t i = 0; i < cfg.S.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (cfg.S[i] == cfg.S[k]) throw ConfigError(field("S", i), "duplicate place " + cfg.S[i].to_string());
  if (cfg.window.size() == 0) throw ConfigError("window", "must be nonempty with lo <= hi");
  if (cfg.epsilon < 0) throw ConfigError("epsilon", "must be nonnegative");
  if (cfg.delta <= 0) throw ConfigError("delta", "must be positive");
  const auto& th = cfg.thresholds;
  if (th.tail_fraction < 0 || th.tail_fraction >= 1) throw ConfigError("thresholds.tail_fraction", "must lie in [0, 1)");
  if (th.smallness_delta <= 0) throw ConfigError("thresholds.smallness_delta", "must be positive");
  if (th.infinite_subset && (*th.infinite_subset <= 0 || *th.infinite_subset > 1))
    throw ConfigError("thresholds.infinite_subset", "must lie in (0, 1]");

  switch (cfg.mode) {
    case Mode::Verify:
    case Mode::Reduce:
      if (cfg.q <= cfg.M + 1)
        throw ConfigError("q", "mode " + to_string(cfg.mode) + " needs q > M+1 (got q = " + std::to_string(cfg.q) +
                                   ", M = " + std::to_string(cfg.M) + ")");
      break;
    case Mode::Wang:
      if (cfg.q < 1 || cfg.q > 12 || cfg.M > 4) throw ConfigError("q", "mode wang is limited to 1 <= q <= 12 and M <= 4");
      for (std::size_t j = 0; j < cfg.q; ++j)
        for (std::size_t l = 0; l <= cfg.M; ++l)
          if (cfg.family.rows[j][l].expr().uses_index())
            throw ConfigError(field("hyperplanes", j) + "[" + std::to_string(l) + "]",
                              "mode wang needs constant forms (no `a`)");
      break;
  }

  if (cfg.mode == Mode::Verify) {
    const std::int64_t spots[] = {cfg.window.lo, cfg.window.lo + (cfg.window.hi - cfg.window.lo) / 2, cfg.window.hi};
    for (std::int64_t a : spots) {
      bool ok;
      try {
        ok = general_position_check(cfg.family, a);
      } catch (const Error& e) {
        throw ConfigError("hyperplanes", e.what());
      }
      if (!ok) throw ConfigError("hyperplanes", "not in general position at alpha=" + std::to_string(a));
    }
  }
}

ExperimentConfig parse_experiment(const Json& j, std::optional<Mode> mode) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig cfg;
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ConfigError("mode", "expected a string");
    cfg.mode = parse_mode(j["mode"].get<std::string>());
  }
  if (mode) cfg.mode = *mode;
  cfg.M = get_count(j, "M");
  cfg.q = get_count(j, "q");

  const Json& S = require(j, "S");
  if (!S.is_array()) throw ConfigError("S", "expected an array of places");
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (!S[i].is_string()) throw ConfigError(field("S", i), "expected a polynomial string or \"inf\"");
    try {
      cfg.S.push_back(PrimeDivisor::parse(S[i].get<std::string>()));
    } catch (const Error& e) {
      throw ConfigError(field("S", i), e.what());
    }
  }

  const Json& pts = require(j, "points");
  if (!pts.is_array()) throw ConfigError("points", "expected an array of expressions");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cfg.xs.coords.push_back(get_sequence(pts[i], field("points", i)));
    cfg.point_text.push_back(expr_text(pts[i], field("points", i)));
  }

  const Json& hs = require(j, "hyperplanes");
  if (!hs.is_array()) throw ConfigError("hyperplanes", "expected an array of coefficient rows");
  for (std::size_t r = 0; r < hs.size(); ++r) {
    if (!hs[r].is_array()) throw ConfigError(field("hyperplanes", r), "expected an array of expressions");
    std::vector<Sequence> row;
    std::vector<std::string> text;
    for (std::size_t l = 0; l < hs[r].size(); ++l) {
      row.push_back(get_sequence(hs[r][l], field("hyperplanes", r) + "[" + std::to_string(l) + "]"));
      text.push_back(expr_text(hs[r][l], ""));
    }
    cfg.family.rows.push_back(std::move(row));
    cfg.hyperplane_text.push_back(std::move(text));
  }

  const Json& w = require(j, "window");
  if (w.is_string()) {
    try {
      cfg.window = Window::parse(w.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError("window", e.what());
    }
  } else if (w.is_array() && w.size() == 2 && w[0].is_number_integer() && w[1].is_number_integer()) {
    cfg.window = Window{w[0].get<std::int64_t>(), w[1].get<std::int64_t>()};
  } else {
    throw ConfigError("window", "expected [lo, hi] or \"lo..hi\"");
  }

  if (j.contains("epsilon")) cfg.epsilon = get_rat(j["epsilon"], "epsilon");
  if (j.contains("delta")) cfg.delta = get_rat(j["delta"], "delta");
  if (j.contains("s_max")) cfg.s_max = static_cast<unsigned>(get_count(j, "s_max"));
  if (j.contains("thresholds")) {
    const Json& t = j["thresholds"];
    if (!t.is_object()) throw ConfigError("thresholds", "expected an object");
    if (t.contains("tail_fraction")) cfg.thresholds.tail_fraction = get_rat(t["tail_fraction"], "thresholds.tail_fraction");
    if (t.contains("smallness_delta"))
      cfg.thresholds.smallness_delta = get_rat(t["smallness_delta"], "thresholds.smallness_delta");
    if (t.contains("coherence_degree")) {
      if (!t["coherence_degree"].is_number_integer() || t["coherence_degree"].get<long long>() < 1)
        throw ConfigError("thresholds.coherence_degree", "expected a positive integer");
      cfg.thresholds.coherence_degree = t["coherence_degree"].get<unsigned>();
    }
    if (t.contains("infinite_subset") && !t["infinite_subset"].is_null())
      cfg.thresholds.infinite_subset = get_rat(t["infinite_subset"], "thresholds.infinite_subset");
  }
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("profile") && j["profile"].is_string()) cfg.profile = j["profile"].get<std::string>();

  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path, std::optional<Mode> mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_experiment(j, mode);
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["mode"] = to_string(mode);
  j["M"] = M;
  j["q"] = q;
  j["S"] = Json::array();
  for (const auto& p : S) j["S"].push_back(p.to_string());
  j["points"] = point_text;
  j["hyperplanes"] = hyperplane_text;
  j["window"] = {window.lo, window.hi};
  j["epsilon"] = ffdio::to_string(epsilon);
  j["delta"] = ffdio::to_string(delta);
  j["s_max"] = s_max;
  Json t;
  t["tail_fraction"] = ffdio::to_string(thresholds.tail_fraction);
  t["smallness_delta"] = ffdio::to_string(thresholds.smallness_delta);
  t["coherence_degree"] = thresholds.coherence_degree;
  t["infinite_subset"] = thresholds.infinite_subset ? Json(ffdio::to_string(*thresholds.infinite_subset)) : Json();
  j["thresholds"] = t;
  j["seed"] = seed ? Json(*seed) : Json();
  j["profile"] = profile;
  return j;
}

}  // namespace ffdio
