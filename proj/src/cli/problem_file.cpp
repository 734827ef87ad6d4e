#include "frackit/cli/problem_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "frackit/errors.hpp"

namespace frackit::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing key '" + key + "'");
  return *it;
}

double number(const json& value, const std::string& key) {
  if (!value.is_number()) throw InputError("'" + key + "' must be a number");
  return value.get<double>();
}

int integer(const json& value, const std::string& key) {
  if (!value.is_number_integer()) throw InputError("'" + key + "' must be an integer");
  const auto v = value.get<long long>();
  if (v < 0 || v > 1'000'000) throw InputError("'" + key + "' is out of range");
  return static_cast<int>(v);
}

std::string text(const json& value, const std::string& key) {
  if (!value.is_string()) throw InputError("'" + key + "' must be a string");
  return value.get<std::string>();
}

const json& object(const json& value, const std::string& key) {
  if (!value.is_object()) throw InputError("'" + key + "' must be an object");
  return value;
}

expr::Ast parse_expression(const std::string& src, const std::string& key) {
  try {
    return expr::parse(src);
  } catch (const expr::SyntaxError& e) {
    throw InputError("'" + key + "': " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ProblemFile parse_problem_file(const std::string& src) {
  json doc;
  try {
    doc = json::parse(src);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  object(doc, "problem file");
  reject_unknown_keys(doc, {"psi", "mu", "nu", "a", "b", "ya", "f", "lipschitz", "grid", "solver"},
                      "problem file");

  ProblemFile out;
  out.psi = text(require(doc, "psi"), "psi");
  out.mu = number(require(doc, "mu"), "mu");
  out.nu = number(require(doc, "nu"), "nu");
  out.a = number(require(doc, "a"), "a");
  out.b = number(require(doc, "b"), "b");
  out.ya = number(require(doc, "ya"), "ya");
  out.f = text(require(doc, "f"), "f");
  out.lipschitz = number(require(doc, "lipschitz"), "lipschitz");

  if (const auto it = doc.find("grid"); it != doc.end()) {
    const json& grid = object(*it, "grid");
    reject_unknown_keys(grid, {"n", "grading"}, "grid");
    if (grid.contains("n")) out.grid_n = integer(grid["n"], "grid.n");
    if (grid.contains("grading")) out.grid_grading = number(grid["grading"], "grid.grading");
  }
  if (const auto it = doc.find("solver"); it != doc.end()) {
    const json& solver = object(*it, "solver");
    reject_unknown_keys(solver, {"tol", "max_iter"}, "solver");
    if (solver.contains("tol")) out.tol = number(solver["tol"], "solver.tol");
    if (solver.contains("max_iter")) out.max_iter = integer(solver["max_iter"], "solver.max_iter");
  }
  return out;
}

LoadedProblem load_problem(const ProblemFile& file) {
  const expr::Ast psi_ast = parse_expression(file.psi, "psi");
  const expr::Ast f_ast = parse_expression(file.f, "f");
  try {
    const Order order(file.mu, file.nu);
    PsiMap psi = expr::make_psi(psi_ast, file.a, file.b);
    solver::RhsFn rhs = [f_ast](double t, double y) { return expr::eval(f_ast, t, y); };
    solver::CauchyProblem problem{order, psi, file.ya, rhs, file.lipschitz};
    problem.validate();

    const int n = file.grid_n.value_or(kDefaultGridCells);
    const double grading = file.grid_grading.value_or(default_grading(order));
    GridPtr grid = make_grid(psi, n, grading);

    solver::SolveOptions options;
    if (file.tol) {
      if (!(*file.tol > 0.0)) throw InvalidArgument("solver.tol must be positive");
      options.tol = *file.tol;
    }
    if (file.max_iter) {
      if (*file.max_iter < 1) throw InvalidArgument("solver.max_iter must be at least 1");
      options.max_iter = *file.max_iter;
    }
    return LoadedProblem{file, psi_ast, f_ast, std::move(problem), std::move(grid), options};
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

LoadedProblem load_problem_path(const std::string& path) {
  return load_problem(parse_problem_file(read_text_file(path)));
}

}  // namespace frackit::cli
