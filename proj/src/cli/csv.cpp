#include "frackit/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "frackit/cli/problem_file.hpp"
#include "frackit/errors.hpp"

namespace frackit::cli {

namespace {

constexpr const char* kHeader = "t,psi_t,weighted_y,y";

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_cell(const std::string& cell, std::size_t line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last) {
    throw InputError("line " + std::to_string(line) + ": malformed number '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = row.find(',', start);
    cells.push_back(row.substr(start, comma - start));
    if (comma == std::string::npos) return cells;
    start = comma + 1;
  }
}

}  // namespace

SolutionTable tabulate(const WeightedFunction& f) {
  const Grid& grid = *f.grid;
  const std::vector<double> raw = from_weighted(f);
  SolutionTable table;
  table.t = grid.nodes();
  table.psi_t = grid.psi_nodes();
  table.weighted_y = f.w;
  table.y.reserve(raw.size());
  for (double v : raw) {
    table.y.push_back(std::isfinite(v) ? std::optional<double>(v) : std::nullopt);
  }
  return table;
}

void write_solution_csv(std::ostream& out, const SolutionTable& table) {
  out << kHeader << '\n';
  for (std::size_t j = 0; j < table.t.size(); ++j) {
    out << format17(table.t[j]) << ',' << format17(table.psi_t[j]) << ','
        << format17(table.weighted_y[j]) << ',';
    if (table.y[j]) out << format17(*table.y[j]);
    out << '\n';
  }
}

void write_solution_csv(std::ostream& out, const WeightedFunction& f) {
  write_solution_csv(out, tabulate(f));
}

SolutionTable read_solution_csv(std::istream& in) {
  std::string row;
  if (!std::getline(in, row)) throw InputError("empty CSV");
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != kHeader) throw InputError(std::string("CSV header must be '") + kHeader + "'");
  SolutionTable table;
  std::size_t line = 1;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const std::vector<std::string> cells = split(row);
    if (cells.size() != 4) {
      throw InputError("line " + std::to_string(line) + ": expected 4 columns");
    }
    table.t.push_back(parse_cell(cells[0], line));
    table.psi_t.push_back(parse_cell(cells[1], line));
    table.weighted_y.push_back(parse_cell(cells[2], line));
    table.y.push_back(cells[3].empty() ? std::nullopt
                                       : std::optional<double>(parse_cell(cells[3], line)));
  }
  if (table.t.size() < 3) throw InputError("CSV has too few rows");
  return table;
}

WeightedFunction candidate_from_table(const SolutionTable& table, const GridPtr& grid, double rho) {
  const auto& nodes = grid->nodes();
  if (table.t.size() != nodes.size()) {
    throw GridMismatch("candidate has " + std::to_string(table.t.size()) +
                       " rows, problem grid has " + std::to_string(nodes.size()) + " nodes");
  }
  const double scale = std::max(std::abs(grid->psi().a()), std::abs(grid->psi().b()));
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (std::abs(table.t[j] - nodes[j]) > 1e-12 * scale) {
      throw GridMismatch("candidate node " + std::to_string(j) + " (t=" + format17(table.t[j]) +
                         ") differs from the problem grid (t=" + format17(nodes[j]) + ")");
    }
  }
  return WeightedFunction(grid, table.weighted_y, rho);
}

}  // namespace frackit::cli
