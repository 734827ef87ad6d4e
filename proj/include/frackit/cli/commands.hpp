#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace frackit::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kConvergenceError = 2, kHypothesisError = 3 };

/// Solves the problem file and writes the CSV plus a sidecar
/// `<out_csv>.report.json` with iterations, residual, contraction_j and
/// hu_constant.
int cmd_solve(const std::string& problem_path, const std::string& out_csv, std::ostream& log);

struct CertifyArgs {
  std::string problem_path;
  std::string candidate_csv;
  double epsilon = 0.0;
  std::string mode = "hu";
  std::optional<std::string> phi;
  // Defaults to `<candidate_csv>.certificate.json`.
  std::optional<std::string> report_path;
};

/// Exit 0 iff the verdict holds; a failed verdict or a violated hypothesis
/// exits 3.
int cmd_certify(const CertifyArgs& args, std::ostream& log);

int cmd_eps_bound(const std::string& problem_path, double eps1, double eps2, double ya1,
                  double ya2, std::ostream& out, std::ostream& log);

/// Worked example with Psi(t) = t: writes solution.csv, ytilde.csv,
/// certificate.json and summary.json into out_dir.
int cmd_example(const std::string& out_dir, std::ostream& log);

}  // namespace frackit::cli
