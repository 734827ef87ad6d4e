#pragma once

#include <span>
#include <vector>

#include "frackit/funcspace.hpp"

namespace frackit::fracops {

/// Kernel of the Psi-Riemann fractional integral,
/// Psi'(eta) (Psi(t) - Psi(eta))^(mu - 1), evaluated in the original t coordinate.
struct KernelSpec {
  KernelSpec(double mu, PsiMap psi);

  double mu;
  PsiMap psi;

  double operator()(double t, double eta) const;
};

/// Product-quadrature discretisation of I^{mu;Psi} on a fixed grid.
///
/// The integral is taken in the coordinate u = Psi(t) - Psi(a). The input is a
/// weighted sample in the space with index rho_in, i.e. h(u) = u^(rho_in - 1) W(u)
/// with W piecewise quadratic in sigma = u^gamma: on cell [u_c, u_c+1] it
/// interpolates nodes c-1, c, c+1 (0, 1, 2 on the first cell), so no node
/// beyond the output point is used. gamma = 1 suits smooth W; gamma = mu
/// matches solutions of order-mu problems, whose weighted form is a series in
/// u^mu. The singular factors
/// (u_i - u)^(mu - 1) and u^(rho_in - 1) are absorbed into Gauss-Jacobi weights on
/// the cells that touch them; all other cells use Gauss-Legendre. The result is
/// returned weighted for the space rho_out. The weight matrix is lower
/// triangular and is built once, so repeated application costs O(N^2).
class FractionalIntegral {
 public:
  FractionalIntegral(GridPtr grid, double mu, double rho_in, double rho_out,
                     double basis_exponent = 1.0);

  double mu() const { return mu_; }
  double rho_in() const { return rho_in_; }
  double rho_out() const { return rho_out_; }
  double basis_exponent() const { return basis_exponent_; }
  const GridPtr& grid() const { return grid_; }

  WeightedFunction apply(const WeightedFunction& g) const;
  /// Applies the operator to raw weighted values (size N + 1). Entry 0 of the
  /// result follows the power-law limit at t = a.
  std::vector<double> apply(std::span<const double> w) const;

  /// Weight of input node k in output node i (k <= i).
  double coefficient(int i, int k) const;

 private:
  void build_row(int i);

  GridPtr grid_;
  double mu_;
  double rho_in_;
  double rho_out_;
  double basis_exponent_;
  bool identity_ = false;
  // 0: output limit is zero; 1: output limit is limit_factor_ * w_in[0].
  int limit_mode_ = 0;
  double limit_factor_ = 0.0;
  std::vector<double> weights_;  // row i occupies [i(i+1)/2, i(i+1)/2 + i]
};

/// I^{mu;Psi} g, returned in g's space.
WeightedFunction frac_integral_weighted(double mu, const WeightedFunction& g);
/// I^{mu;Psi} g, returned in the space rho_out.
WeightedFunction frac_integral_weighted(double mu, const WeightedFunction& g, double rho_out);

/// Closed form Gamma(delta)/Gamma(mu + delta) (Psi(t) - Psi(a))^(mu + delta - 1) of the
/// fractional integral of (Psi - Psi(a))^(delta - 1).
double power_rule(double mu, double delta, const PsiMap& psi, double t);

/// Minimum grid size accepted by hilfer_derivative.
inline constexpr int kMinDerivativeCells = 8;

/// Psi-Hilfer derivative I^{nu(1-mu)} (1/Psi' d/dt) I^{(1-nu)(1-mu)} h on the grid of h.
///
/// Evaluated as d/du I^{1-mu} applied to h minus its u^(rho-1) component,
/// which the operator annihilates. The inner integral uses a basis in u^mu, or
/// u^(1 - h.rho) when that is finer, so fractional integrals of smooth
/// functions are recovered closely; the
/// derivative is a three-point difference in u = Psi(t) - Psi(a). The result
/// lives in the space rho = order.rho() and its value at t = a is copied from
/// node 1. Requires h.rho >= order.rho() and at least kMinDerivativeCells cells.
WeightedFunction hilfer_derivative(const Order& order, const WeightedFunction& h);

}  // namespace frackit::fracops
