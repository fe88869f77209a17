#pragma once

/**
 * End-to-end runs on a window:
 *
 *   run_verify     sum_j sum_{p in S} lambda_{p,H_j(alpha)}(x(alpha))
 *                  against (M+1+eps) h(x(alpha)) + C
 *   run_wang_check sum_{p in S} max_J sum_{j in J} lambda with J ranging over
 *                  K-independent subsets of size <= M+1 (constant forms)
 *   run_reduction  the full Steinmetz reduction with every exact identity
 *                  checked, then l(s) sum_p sum_l lambda_{p,H_{J[l]}}(x)
 *                  against ((M+1) l(s+1) + delta) h(P) + C
 *
 * C is fitted on the head of the window (the first tail_fraction of it) as
 * the largest excess there, floored at 0. The verdict asks LHS <= RHS at
 * every non-excluded alpha after the head, or, with
 * thresholds.infinite_subset = f, at a fraction >= f of all non-excluded
 * alpha. The verdict with C forced to 0 is reported alongside.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffdio/config.hpp"

namespace ffdio {

enum class Verdict { Pass, Fail, Refused };
std::string to_string(Verdict v);
// 0 PASS, 2 FAIL, 3 refusal.
int exit_code(Verdict v);

struct ReportRow {
  std::int64_t alpha = 0;
  long h_x = 0;
  std::vector<long> lam;  // per hyperplane: sum over S of lambda
  long lhs = 0;
  Rat rhs;
  std::optional<Rat> ratio;  // lhs / h_x
  bool excluded = false;
  std::string note;
};

struct ProbeSummary {
  std::string name;
  bool required = false;
  WindowVerdict verdict;
};

struct VerificationReport {
  Mode mode = Mode::Verify;
  std::vector<ReportRow> rows;
  Verdict verdict = Verdict::Refused;
  bool pass_without_constant = false;
  Rat fitted_constant;
  std::int64_t tail_start = 0;  // first alpha judged by the cofinite rule
  Rat passing_fraction;         // among non-excluded alpha, whole window
  std::vector<ProbeSummary> probes;
  std::string message;
  Json config;
  Json details;  // mode-specific summary
};

struct RunOptions {
  unsigned threads = 1;
};

VerificationReport run_verify(const ExperimentConfig& cfg, const RunOptions& opt = {});
VerificationReport run_wang_check(const ExperimentConfig& cfg, const RunOptions& opt = {});
VerificationReport run_reduction(const ExperimentConfig& cfg, const RunOptions& opt = {});
VerificationReport run(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Nonempty subsets (as sorted index lists) of size <= max_size whose forms
// are linearly independent over K, in order of size then lexicographic.
std::vector<std::vector<std::size_t>> independent_subsets(const std::vector<LinearForm>& forms, std::size_t max_size);

}  // namespace ffdio
