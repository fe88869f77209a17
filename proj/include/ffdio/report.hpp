#pragma once

// CSV and JSON renderings of a VerificationReport. Both are pure functions
// of the report, so equal reports give byte-identical output.

#include <string>

#include "ffdio/harness.hpp"

namespace ffdio {

// Header: alpha,h_x,lhs,rhs,ratio,excluded,lam_1,...,lam_q.
std::string report_csv(const VerificationReport& r);
Json report_json(const VerificationReport& r);
std::string verdict_line(const VerificationReport& r);

Json verdict_json(const WindowVerdict& v);

}  // namespace ffdio
