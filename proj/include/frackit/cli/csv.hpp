#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "frackit/funcspace.hpp"

namespace frackit::cli {

// Columns t, psi_t, weighted_y, y. y is absent at t = a when rho < 1.
struct SolutionTable {
  std::vector<double> t;
  std::vector<double> psi_t;
  std::vector<double> weighted_y;
  std::vector<std::optional<double>> y;
};

SolutionTable tabulate(const WeightedFunction& f);

/// Writes the table with 17 significant digits and LF line endings.
void write_solution_csv(std::ostream& out, const SolutionTable& table);
void write_solution_csv(std::ostream& out, const WeightedFunction& f);

/// Reads a table written by write_solution_csv. Throws InputError on a bad
/// header, a malformed number, or a ragged row.
SolutionTable read_solution_csv(std::istream& in);

/// Matches the t column against the grid nodes and wraps weighted_y. Throws
/// GridMismatch if the nodes differ.
WeightedFunction candidate_from_table(const SolutionTable& table, const GridPtr& grid, double rho);

}  // namespace frackit::cli
