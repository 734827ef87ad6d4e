#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "frackit/expr.hpp"
#include "frackit/funcspace.hpp"
#include "frackit/solver.hpp"

namespace frackit::cli {

// Malformed or invalid input file; maps to exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  std::string psi;
  double mu = 0.0;
  double nu = 0.0;
  double a = 0.0;
  double b = 0.0;
  double ya = 0.0;
  std::string f;
  double lipschitz = 0.0;
  std::optional<int> grid_n;
  std::optional<double> grid_grading;
  std::optional<double> tol;
  std::optional<int> max_iter;
};

constexpr int kDefaultGridCells = 1024;

struct LoadedProblem {
  ProblemFile file;
  expr::Ast psi_ast;
  expr::Ast f_ast;
  solver::CauchyProblem problem;
  GridPtr grid;
  solver::SolveOptions options;
};

/// Parses the JSON text of a problem file. Unknown keys, missing keys and
/// wrong types are InputErrors; JSON syntax errors report the byte position.
ProblemFile parse_problem_file(const std::string& text);

/// Builds the Cauchy problem, its grid and solver options. Every
/// construction failure is rethrown as InputError.
LoadedProblem load_problem(const ProblemFile& file);
LoadedProblem load_problem_path(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace frackit::cli
