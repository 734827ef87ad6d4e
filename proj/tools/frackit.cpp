#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "frackit/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Psi-Hilfer fractional Cauchy problem solver with Ulam-Hyers stability checks"};
  app.require_subcommand(1);

  std::string problem;
  std::string out;

  auto* solve = app.add_subcommand("solve", "solve a problem file and write a CSV");
  solve->add_option("problem", problem, "problem JSON")->required();
  solve->add_option("-o,--out", out, "output CSV")->required();

  frackit::cli::CertifyArgs certify_args;
  std::string phi;
  std::string report;
  auto* certify = app.add_subcommand("certify", "check a candidate CSV for HU or HUR stability");
  certify->add_option("problem", certify_args.problem_path, "problem JSON")->required();
  certify->add_option("candidate", certify_args.candidate_csv, "candidate CSV")->required();
  certify->add_option("--eps", certify_args.epsilon, "residual level epsilon")->required();
  certify->add_option("--mode", certify_args.mode, "hu or hur")
      ->check(CLI::IsMember({"hu", "hur"}));
  auto* phi_opt = certify->add_option("--phi", phi, "comparison function phi(t) for hur");
  auto* report_opt = certify->add_option("--report", report, "certificate JSON path");

  double eps1 = 0.0, eps2 = 0.0, ya1 = 0.0, ya2 = 0.0;
  auto* eps_bound = app.add_subcommand("eps-bound", "distance bound for approximate solutions");
  eps_bound->add_option("problem", problem, "problem JSON")->required();
  eps_bound->add_option("--eps1", eps1, "residual level of the first solution")->required();
  eps_bound->add_option("--eps2", eps2, "residual level of the second solution")->required();
  eps_bound->add_option("--ya1", ya1, "initial datum of the first solution")->required();
  eps_bound->add_option("--ya2", ya2, "initial datum of the second solution")->required();

  auto* example = app.add_subcommand("example", "reproduce the worked example");
  example->add_option("-o,--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : frackit::cli::kInputError;
  }

  if (*solve) return frackit::cli::cmd_solve(problem, out, std::cerr);
  if (*certify) {
    if (*phi_opt) certify_args.phi = phi;
    if (*report_opt) certify_args.report_path = report;
    return frackit::cli::cmd_certify(certify_args, std::cerr);
  }
  if (*eps_bound) {
    return frackit::cli::cmd_eps_bound(problem, eps1, eps2, ya1, ya2, std::cout, std::cerr);
  }
  return frackit::cli::cmd_example(out, std::cerr);
}
