#include "frackit/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "frackit/cli/csv.hpp"
#include "frackit/cli/problem_file.hpp"
#include "frackit/errors.hpp"
#include "frackit/expr.hpp"
#include "frackit/special.hpp"
#include "frackit/stability.hpp"

namespace frackit::cli {

namespace {

using nlohmann::ordered_json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

void write_json(const std::string& path, const ordered_json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

void write_csv(const std::string& path, const WeightedFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_solution_csv(out, f);
  if (!out) throw InputError("write failed for '" + path + "'");
}

ordered_json solve_report_json(const solver::SolveReport& report, double hu) {
  ordered_json doc;
  doc["converged"] = report.converged;
  doc["iterations"] = report.iterations;
  doc["residual"] = report.residual;
  doc["contraction_j"] = report.contraction_j;
  doc["hu_constant"] = hu;
  doc["gap_history"] = report.gap_history;
  return doc;
}

ordered_json certificate_json(const stability::StabilityCertificate& cert, const Grid& grid) {
  ordered_json doc;
  doc["kind"] = stability::to_string(cert.kind);
  doc["verdict"] = cert.verdict;
  doc["residual_verdict"] = cert.residual_verdict;
  doc["epsilon"] = cert.epsilon;
  doc["constant"] = cert.constant;
  if (cert.kind == stability::CertificateKind::HUR) doc["lambda"] = cert.lambda;
  doc["distance"] = cert.distance;
  doc["bound"] = cert.bound;
  doc["tolerance"] = cert.tolerance;
  doc["note"] = cert.note;
  ordered_json nodes = ordered_json::array();
  for (std::size_t j = 0; j < cert.margins.size(); ++j) {
    nodes.push_back({{"t", grid.nodes()[j]},
                     {"bound", cert.bound_profile[j]},
                     {"observed", cert.observed[j]},
                     {"margin", cert.margins[j]}});
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

// Runs body, mapping exceptions onto the exit-code contract.
template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const solver::ConvergenceError& e) {
    log << "error: " << e.what() << '\n';
    return kConvergenceError;
  } catch (const HypothesisError& e) {
    log << "hypothesis violated: " << e.what() << '\n';
    return kHypothesisError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int cmd_solve(const std::string& problem_path, const std::string& out_csv, std::ostream& log) {
  return guarded(log, [&] {
    const LoadedProblem loaded = load_problem_path(problem_path);
    const double hu = stability::hu_constant(loaded.problem);
    std::optional<solver::SolveReport> result;
    int status = kOk;
    try {
      result = solver::picard_solve(loaded.problem, loaded.grid, loaded.options.tol,
                                    loaded.options.max_iter);
    } catch (const solver::ConvergenceError& e) {
      log << "error: " << e.what() << '\n';
      result = e.report();
      status = kConvergenceError;
    }
    const solver::SolveReport& report = *result;
    write_csv(out_csv, report.solution);
    write_json(out_csv + ".report.json", solve_report_json(report, hu));
    if (status == kOk) {
      log << "converged in " << report.iterations << " iterations, residual " << report.residual
          << '\n';
    }
    return status;
  });
}

int cmd_certify(const CertifyArgs& args, std::ostream& log) {
  return guarded(log, [&] {
    if (args.mode != "hu" && args.mode != "hur") {
      throw InputError("mode must be 'hu' or 'hur', got '" + args.mode + "'");
    }
    if (!(args.epsilon >= 0.0) || !std::isfinite(args.epsilon)) {
      throw InputError("epsilon must be a nonnegative number");
    }
    const LoadedProblem loaded = load_problem_path(args.problem_path);
    std::ifstream in(args.candidate_csv, std::ios::binary);
    if (!in) throw InputError("cannot read '" + args.candidate_csv + "'");
    const SolutionTable table = read_solution_csv(in);
    const WeightedFunction candidate =
        candidate_from_table(table, loaded.grid, loaded.problem.order.rho());
    const stability::DistanceOptions options{loaded.options.tol, loaded.options.max_iter};

    stability::StabilityCertificate cert;
    if (args.mode == "hu") {
      cert = stability::hu_distance_check(loaded.problem, candidate, args.epsilon, options);
    } else {
      if (!args.phi) throw InputError("mode 'hur' requires --phi");
      expr::Ast phi_ast;
      try {
        phi_ast = expr::parse(*args.phi);
      } catch (const expr::SyntaxError& e) {
        throw InputError(std::string("phi: ") + e.what());
      }
      if (expr::uses_y(phi_ast)) throw InputError("phi must not depend on y");
      std::vector<double> values;
      for (double t : loaded.grid->nodes()) values.push_back(expr::eval(phi_ast, t));
      const stability::PhiFunction phi(loaded.grid, std::move(values));
      cert = stability::hur_distance_check(loaded.problem, candidate, args.epsilon, phi, options);
    }
    const std::string report_path =
        args.report_path.value_or(args.candidate_csv + ".certificate.json");
    write_json(report_path, certificate_json(cert, *loaded.grid));
    log << stability::to_string(cert.kind) << " verdict: " << (cert.verdict ? "true" : "false")
        << " (residual " << (cert.residual_verdict ? "ok" : "fails") << ", distance "
        << cert.distance << ", bound " << cert.bound << ")\n";
    return cert.verdict ? kOk : kHypothesisError;
  });
}

int cmd_eps_bound(const std::string& problem_path, double eps1, double eps2, double ya1,
                  double ya2, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const LoadedProblem loaded = load_problem_path(problem_path);
    stability::EpsBound bound;
    try {
      bound = stability::eps_approx_bound(loaded.problem, eps1, eps2, ya1, ya2);
    } catch (const InvalidArgument& e) {
      throw InputError(e.what());
    }
    if (eps1 == 0.0 && eps2 == 0.0) out << "initial-data dependence bound\n";
    out.precision(17);
    out << "bound: " << bound.value << '\n';
    out << "eps_series: " << bound.eps_series << " (terms " << bound.eps_terms << ", tail "
        << bound.eps_tail << ")\n";
    out << "ya_series: " << bound.ya_series << " (terms " << bound.ya_terms << ", tail "
        << bound.ya_tail << ")\n";
    return kOk;
  });
}

int cmd_example(const std::string& out_dir, std::ostream& log) {
  return guarded(log, [&] {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create '" + out_dir + "': " + ec.message());
    const std::filesystem::path dir(out_dir);

    const PsiMap psi = PsiMap::identity(0.0, 1.0);
    const solver::CauchyProblem problem = solver::example_problem(psi);
    const GridPtr grid = make_grid(psi, kDefaultGridCells, default_grading(problem.order));
    const solver::SolveReport report = solver::picard_solve(problem, grid);
    write_csv((dir / "solution.csv").string(), report.solution);

    // Weighted error against 2 E_{1/2,3/4}(4 sqrt(t)), relative to the max norm.
    double max_error = 0.0;
    double exact_norm = 0.0;
    for (std::size_t j = 0; j < grid->nodes().size(); ++j) {
      const double exact = solver::example_closed_form_weighted(psi, grid->nodes()[j]);
      max_error = std::max(max_error, std::abs(report.solution.w[j] - exact));
      exact_norm = std::max(exact_norm, std::abs(exact));
    }
    const double relative_error = max_error / exact_norm;

    // ytilde(t) = 2 t^(-1/4) / Gamma(3/4); its weighted form is constant.
    const double epsilon = 8.0;
    const double gamma34 = special::gamma_fn(0.75);
    const WeightedFunction ytilde(grid, std::vector<double>(grid->size() + 1, 2.0 / gamma34),
                                  problem.order.rho());
    write_csv((dir / "ytilde.csv").string(), ytilde);
    const stability::StabilityCertificate cert =
        stability::hu_distance_check(problem, ytilde, epsilon);
    write_json((dir / "certificate.json").string(), certificate_json(cert, *grid));
    const stability::StabilityCertificate residual = stability::residual_certificate(
        problem, ytilde, epsilon, stability::ResidualKind::Constant);

    const double cf_expression =
        std::abs(special::mittag_leffler2({0.5, 0.75}, 4.0) - 2.0 / gamma34);
    const double hu = stability::hu_constant(problem);
    const bool distance_ok = cert.distance <= epsilon * hu + cert.tolerance;

    struct Check {
      const char* name;
      bool passed;
      double value;
      double threshold;
    };
    const std::vector<Check> checks{
        {"solver_converged", report.converged, static_cast<double>(report.iterations),
         static_cast<double>(solver::SolveOptions{}.max_iter)},
        {"closed_form_weighted_error", relative_error <= 1e-3, relative_error, 1e-3},
        {"ytilde_residual_certificate", residual.verdict,
         *std::min_element(residual.margins.begin(), residual.margins.end()), -residual.tolerance},
        {"ytilde_distance_within_eps_hu_constant", distance_ok, cert.distance, epsilon * hu},
        {"ytilde_distance_over_eps_within_cf_expression",
         cert.distance / epsilon <= cf_expression, cert.distance / epsilon, cf_expression},
    };

    ordered_json summary;
    summary["problem"] = {{"psi", "t"}, {"mu", 0.5}, {"nu", 0.5}, {"a", 0.0}, {"b", 1.0},
                          {"ya", 2.0}, {"f", "4*y"}, {"lipschitz", 4.0}};
    summary["grid"] = {{"n", grid->size()}, {"grading", grid->grading()}};
    summary["solver"] = solve_report_json(report, hu);
    summary["closed_form"] = {{"max_weighted_error", max_error},
                              {"relative_weighted_error", relative_error}};
    summary["ytilde"] = {{"epsilon", epsilon},
                         {"distance", cert.distance},
                         {"eps_times_hu_constant", epsilon * hu},
                         {"residual_verdict", cert.residual_verdict},
                         {"verdict", cert.verdict}};
    summary["cf_expression"] = cf_expression;
    ordered_json check_list = ordered_json::array();
    const Check* first_failed = nullptr;
    for (const Check& c : checks) {
      check_list.push_back(
          {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
      if (!c.passed && !first_failed) first_failed = &c;
    }
    summary["checks"] = std::move(check_list);
    summary["all_passed"] = first_failed == nullptr;
    write_json((dir / "summary.json").string(), summary);

    for (const Check& c : checks) {
      log << (c.passed ? "PASS " : "FAIL ") << c.name << " (value " << c.value << ", threshold "
          << c.threshold << ")\n";
    }
    if (first_failed) {
      log << "first failed check: " << first_failed->name << '\n';
      return kHypothesisError;
    }
    return kOk;
  });
}

}  // namespace frackit::cli
