#include "ffdio/report.hpp"

#include <sstream>

namespace ffdio {

std::string report_csv(const VerificationReport& r) {
  std::ostringstream out;
  std::size_t q = r.rows.empty() ? 0 : r.rows.front().lam.size();
  out << "alpha,h_x,lhs,rhs,ratio,excluded";
  for (std::size_t j = 1; j <= q; ++j) out << ",lam_" << j;
  out << '\n';
  for (const auto& row : r.rows) {
    out << row.alpha << ',' << row.h_x << ',' << row.lhs << ',' << to_string(row.rhs) << ',';
    if (row.ratio) out << to_string(*row.ratio);
    out << ',' << (row.excluded ? 1 : 0);
    for (long v : row.lam) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

Json verdict_json(const WindowVerdict& v) {
  Json j;
  j["window"] = v.window.to_string();
  j["holds"] = v.holds;
  j["exceptions"] = v.exceptions;
  j["statistic"] = to_string(v.statistic);
  j["note"] = v.note;
  if (!v.detail.empty()) {
    Json d = Json::array();
    for (const auto& [a, s] : v.detail) d.push_back({a, to_string(s)});
    j["detail"] = d;
  }
  return j;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["verdict"] = to_string(r.verdict);
  j["verdict_without_constant"] = r.verdict == Verdict::Refused ? "REFUSED" : (r.pass_without_constant ? "PASS" : "FAIL");
  j["fitted_constant"] = to_string(r.fitted_constant);
  j["tail_start"] = r.tail_start;
  j["passing_fraction"] = to_string(r.passing_fraction);
  j["message"] = r.message;
  j["probes"] = Json::array();
  for (const auto& p : r.probes) {
    Json pj = verdict_json(p.verdict);
    pj["name"] = p.name;
    pj["required"] = p.required;
    j["probes"].push_back(pj);
  }
  j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["alpha"] = row.alpha;
    rj["h_x"] = row.h_x;
    rj["lhs"] = row.lhs;
    rj["rhs"] = to_string(row.rhs);
    rj["ratio"] = row.ratio ? Json(to_string(*row.ratio)) : Json();
    rj["excluded"] = row.excluded;
    for (std::size_t k = 0; k < row.lam.size(); ++k) rj["lam_" + std::to_string(k + 1)] = row.lam[k];
    if (!row.note.empty()) rj["note"] = row.note;
    j["rows"].push_back(rj);
  }
  j["details"] = r.details.is_null() ? Json::object() : r.details;
  j["config"] = r.config;
  return j;
}

std::string verdict_line(const VerificationReport& r) {
  std::string s = to_string(r.mode) + ": " + to_string(r.verdict);
  if (r.verdict == Verdict::Refused) return s + " (" + r.message + ")";
  s += " C=" + to_string(r.fitted_constant) + " tail_from=" + std::to_string(r.tail_start) +
       " passing=" + to_string(r.passing_fraction) + " without_C=" + (r.pass_without_constant ? "PASS" : "FAIL");
  return s;
}

}  // namespace ffdio
