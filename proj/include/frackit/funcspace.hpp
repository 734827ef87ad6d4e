#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace frackit {

/// Order of a Psi-Hilfer operator: 0 < mu < 1, 0 <= nu <= 1, and the derived
/// index rho = mu + nu - mu nu which fixes the weight (Psi(t) - Psi(a))^(1 - rho).
class Order {
 public:
  Order(double mu, double nu);

  double mu() const { return mu_; }
  double nu() const { return nu_; }
  double rho() const { return rho_; }

 private:
  double mu_;
  double nu_;
  double rho_;
};

using ScalarFn = std::function<double(double)>;

/// Increasing C^1 coordinate map Psi on [a, b] together with its derivative.
///
/// Construction samples 1024 equally spaced points and rejects maps whose
/// derivative is not strictly positive or whose values are not strictly
/// increasing there. Monotonicity between samples is not proven.
class PsiMap {
 public:
  static constexpr int kSamplePoints = 1024;

  PsiMap(ScalarFn psi, ScalarFn dpsi, double a, double b);

  /// Psi(t) = t on [a, b].
  static PsiMap identity(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double operator()(double t) const { return psi_(t); }
  double derivative(double t) const { return dpsi_(t); }

  /// Psi(t) - Psi(a) for t in [a, b]; throws DomainError outside.
  double offset(double t) const;
  /// Psi(b) - Psi(a).
  double span() const { return span_; }

 private:
  ScalarFn psi_;
  ScalarFn dpsi_;
  double a_;
  double b_;
  double psi_a_;
  double span_;
};

/// Graded mesh t_j = a + (b - a) (j / N)^r with cached Psi values.
class Grid {
 public:
  Grid(PsiMap psi, int n, double grading);

  int size() const { return n_; }  // N, the number of cells
  double grading() const { return grading_; }
  const PsiMap& psi() const { return psi_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& psi_nodes() const { return psi_nodes_; }
  /// Psi(t_j) - Psi(a); the integration coordinate used by every operator.
  const std::vector<double>& offsets() const { return offsets_; }

  bool same_nodes(const Grid& other) const;

 private:
  PsiMap psi_;
  int n_;
  double grading_;
  std::vector<double> nodes_;
  std::vector<double> psi_nodes_;
  std::vector<double> offsets_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Grid sample of y in C_{1-rho;Psi} stored as w_j = (Psi(t_j) - Psi(a))^(1-rho) y(t_j).
///
/// `rho` is the space index of the sample. Solutions of a Cauchy problem use
/// the problem's Order::rho(); intermediate results of the fractional
/// operators may live in other spaces. w[0] is the limit of the weighted
/// function at t = a; when no limit is derivable it is filled by constant
/// extrapolation and `limit_known` is false.
struct WeightedFunction {
  WeightedFunction(GridPtr grid, std::vector<double> w, double rho, bool limit_known = true);

  GridPtr grid;
  std::vector<double> w;
  double rho;
  bool limit_known;

  std::size_t size() const { return w.size(); }
};

GridPtr make_grid(const PsiMap& psi, int n, double grading);

/// max(1, 1/rho): clusters nodes near the weight singularity at t = a.
double default_grading(const Order& order);

/// (Psi(t) - Psi(a))^(1 - rho).
double weight(const PsiMap& psi, const Order& order, double t);
double weight(const PsiMap& psi, double rho, double t);

/// Omega(t) = (Psi(t) - Psi(a))^(rho - 1) / Gamma(rho); singular at t = a when rho < 1.
double omega(const PsiMap& psi, const Order& order, double t);
double omega(const PsiMap& psi, double rho, double t);

/// Discrete weighted norm max_j |w_j|.
double weighted_norm(const WeightedFunction& f);
double weighted_norm(std::span<const double> w);

/// Wrap raw samples y(t_1..t_N) into weighted form; w0 is the weighted limit at t = a.
WeightedFunction to_weighted(GridPtr grid, double rho, std::span<const double> y_interior,
                             double w0);
WeightedFunction to_weighted(GridPtr grid, const Order& order, std::span<const double> y_interior,
                             double w0);

/// Raw values y(t_j) for j = 0..N. At t = a with rho < 1 the entry is
/// +/-infinity when w0 != 0 and NaN when the limit is indeterminate.
std::vector<double> from_weighted(const WeightedFunction& f);

/// Re-express f in the space with index rho_out (w scales by u^(rho - rho_out)).
/// Throws DomainError when the result is unbounded at t = a.
WeightedFunction rewrap(const WeightedFunction& f, double rho_out);

}  // namespace frackit
