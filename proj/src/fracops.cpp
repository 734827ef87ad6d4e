#include "frackit/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frackit/errors.hpp"
#include "frackit/gauss_jacobi.hpp"
#include "frackit/parallel.hpp"
#include "frackit/special.hpp"

namespace frackit::fracops {

namespace {

constexpr double kSpaceTolerance = 1e-14;
constexpr int kRegularPoints = 12;
constexpr int kNearPoints = 24;
constexpr int kSingularPoints = 20;
// Cells this close (in index) to a singular endpoint get the denser rule.
constexpr int kNearCells = 3;

struct CellRules {
  GaussRule regular;
  GaussRule near;
  GaussRule left;   // first cell, substituted
  GaussRule right;  // (1 - s)^alpha
  GaussRule both;   // first cell of the first row
};

std::size_t row_start(int i) { return static_cast<std::size_t>(i) * (i + 1) / 2; }

}  // namespace

KernelSpec::KernelSpec(double m, PsiMap p) : mu(m), psi(std::move(p)) {
  if (!(mu > 0.0)) throw InvalidArgument("KernelSpec: mu must be positive");
}

double KernelSpec::operator()(double t, double eta) const {
  return psi.derivative(eta) * std::pow(psi(t) - psi(eta), mu - 1.0);
}

FractionalIntegral::FractionalIntegral(GridPtr grid, double mu, double rho_in, double rho_out,
                                       double basis_exponent)
    : grid_(std::move(grid)),
      mu_(mu),
      rho_in_(rho_in),
      rho_out_(rho_out),
      basis_exponent_(basis_exponent) {
  if (!(basis_exponent > 0.0 && basis_exponent <= 1.0)) {
    throw InvalidArgument("FractionalIntegral: basis exponent must lie in (0, 1]");
  }
  if (!grid_) throw InvalidArgument("FractionalIntegral: missing grid");
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw InvalidArgument("FractionalIntegral: order must be nonnegative");
  }
  for (double r : {rho_in, rho_out}) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("FractionalIntegral: rho must lie in (0, 1]");
  }
  const double excess = rho_in + mu - rho_out;
  if (excess < -kSpaceTolerance) {
    std::ostringstream os;
    os << "FractionalIntegral: I^" << mu << " of a C_{1-" << rho_in
       << "} function is unbounded in C_{1-" << rho_out << "}";
    throw DomainError(os.str());
  }
  if (std::abs(excess) <= kSpaceTolerance) {
    limit_mode_ = 1;
    limit_factor_ = special::gamma_fn(rho_in) / special::gamma_fn(rho_in + mu);
  }
  if (mu == 0.0) {
    identity_ = true;
    return;
  }
  const int n = grid_->size();
  weights_.assign(row_start(n + 1), 0.0);

  const double alpha = mu - 1.0;
  const double beta = rho_in - 1.0;
  const double gamma = basis_exponent_;
  // On the first cell x = u_1 r^(1/gamma), which turns x^beta dx into the
  // Jacobi weight r^(rho_in/gamma - 1) and the basis into polynomials in r.
  const double first_beta = rho_in / gamma - 1.0;
  const CellRules rules{gauss_jacobi(kRegularPoints, 0.0, 0.0),
                        gauss_jacobi(kNearPoints, 0.0, 0.0),
                        gauss_jacobi(kSingularPoints, 0.0, first_beta),
                        gauss_jacobi(kSingularPoints, std::min(alpha, 0.0), 0.0),
                        gauss_jacobi(kSingularPoints, std::min(alpha, 0.0), first_beta)};
  const auto& u = grid_->offsets();
  std::vector<double> sigma(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) sigma[k] = gamma == 1.0 ? u[k] : std::pow(u[k], gamma);
  const double inv_gamma_fn = 1.0 / special::gamma_fn(mu);
  const bool right_singular = mu < 1.0;

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    double* row = weights_.data() + row_start(i);
    const double ui = u[i];
    for (int c = 0; c < i; ++c) {
      const bool rs = right_singular && c == i - 1;
      const GaussRule* rule;
      if (c == 0) {
        rule = rs ? &rules.both : &rules.left;
      } else if (rs) {
        rule = &rules.right;
      } else if (c <= kNearCells || c >= i - 1 - kNearCells) {
        rule = &rules.near;
      } else {
        rule = &rules.regular;
      }
      const double lo = u[c];
      const double h = u[c + 1] - lo;
      const double kernel_scale = rs ? std::pow(h, alpha) : 1.0;
      const double cell_scale = c == 0 ? std::pow(h, rho_in) / gamma : h;
      // Quadratic interpolation of W in sigma = u^gamma through three nodes
      // with indices <= i; the first row has only two.
      const int first = i == 1 ? 0 : std::max(c - 1, 0);
      const int count = i == 1 ? 2 : 3;
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t q = 0; q < rule->nodes.size(); ++q) {
        const double s = rule->nodes[q];
        double x;
        double sig;
        double factor;
        if (c == 0) {
          x = gamma == 1.0 ? h * s : h * std::pow(s, 1.0 / gamma);
          sig = sigma[1] * s;
          if (rs) {
            // (u_1 - x)^alpha = h^alpha (1 - s)^alpha ((1 - s^(1/gamma)) / (1 - s))^alpha
            const double ratio = gamma == 1.0 ? 1.0 : -std::expm1(std::log(s) / gamma) / (1.0 - s);
            factor = kernel_scale * (gamma == 1.0 ? 1.0 : std::pow(ratio, alpha));
          } else {
            factor = std::pow(ui - x, alpha);
          }
        } else {
          x = lo + h * s;
          sig = gamma == 1.0 ? x : std::pow(x, gamma);
          factor = (rs ? kernel_scale : std::pow(ui - x, alpha)) *
                   (beta == 0.0 ? 1.0 : std::pow(x, beta));
        }
        const double v = rule->weights[q] * factor;
        for (int m = 0; m < count; ++m) {
          double basis = 1.0;
          for (int l = 0; l < count; ++l) {
            if (l != m) basis *= (sig - sigma[first + l]) / (sigma[first + m] - sigma[first + l]);
          }
          acc[m] += v * basis;
        }
      }
      for (int m = 0; m < count; ++m) row[first + m] += cell_scale * acc[m];
    }
    const double scale = inv_gamma_fn * (rho_out_ == 1.0 ? 1.0 : std::pow(ui, 1.0 - rho_out_));
    for (int k = 0; k <= i; ++k) row[k] *= scale;
  });
}

double FractionalIntegral::coefficient(int i, int k) const {
  if (identity_ || i < 1 || k < 0 || k > i || i > grid_->size()) return 0.0;
  return weights_[row_start(i) + k];
}

std::vector<double> FractionalIntegral::apply(std::span<const double> w) const {
  const int n = grid_->size();
  if (w.size() != static_cast<std::size_t>(n) + 1) {
    throw InvalidArgument("FractionalIntegral::apply: size does not match grid");
  }
  std::vector<double> out(w.size());
  out[0] = limit_mode_ == 1 ? limit_factor_ * w[0] : 0.0;
  if (identity_) {
    const auto& u = grid_->offsets();
    const double shift = rho_in_ - rho_out_;
    for (int i = 1; i <= n; ++i) out[i] = shift == 0.0 ? w[i] : std::pow(u[i], shift) * w[i];
    return out;
  }
  for (int i = 1; i <= n; ++i) {
    const double* row = weights_.data() + row_start(i);
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) acc += row[k] * w[k];
    out[i] = acc;
  }
  return out;
}

WeightedFunction FractionalIntegral::apply(const WeightedFunction& g) const {
  if (g.grid != grid_ && !g.grid->same_nodes(*grid_)) {
    throw GridMismatch("FractionalIntegral: function sampled on a different grid");
  }
  if (std::abs(g.rho - rho_in_) > kSpaceTolerance) {
    throw InvalidArgument("FractionalIntegral: input space index does not match");
  }
  const bool known = limit_mode_ == 0 || g.limit_known;
  return WeightedFunction(grid_, apply(std::span<const double>(g.w)), rho_out_, known);
}

WeightedFunction frac_integral_weighted(double mu, const WeightedFunction& g) {
  return frac_integral_weighted(mu, g, g.rho);
}

WeightedFunction frac_integral_weighted(double mu, const WeightedFunction& g, double rho_out) {
  if (!(mu > 0.0)) throw InvalidArgument("frac_integral_weighted: mu must be positive");
  return FractionalIntegral(g.grid, mu, g.rho, rho_out).apply(g);
}

double power_rule(double mu, double delta, const PsiMap& psi, double t) {
  if (!(mu > 0.0) || !(delta > 0.0)) {
    throw DomainError("power_rule: mu and delta must be positive");
  }
  const double coeff = std::exp(special::log_gamma(delta) - special::log_gamma(mu + delta));
  const double u = psi.offset(t);
  const double exponent = mu + delta - 1.0;
  if (u == 0.0) {
    if (exponent > 0.0) return 0.0;
    if (exponent == 0.0) return coeff;
    throw DomainError("power_rule: singular at t = a");
  }
  return coeff * std::pow(u, exponent);
}

WeightedFunction hilfer_derivative(const Order& order, const WeightedFunction& h) {
  const GridPtr& grid = h.grid;
  const int n = grid->size();
  if (n < kMinDerivativeCells) {
    std::ostringstream os;
    os << "hilfer_derivative: grid too coarse (N=" << n << ", need >= " << kMinDerivativeCells
       << ")";
    throw InvalidArgument(os.str());
  }
  const double rho = order.rho();
  const double mu = order.mu();
  if (h.rho < rho - kSpaceTolerance) {
    throw DomainError("hilfer_derivative: input is more singular than C_{1-rho}");
  }

  // D^{mu,nu} = d/du I^{1-mu} on functions whose weighted limit term vanishes;
  // u^(rho-1) lies in the kernel, so that term is removed first. One
  // differentiation of a single integral keeps the error local.
  std::vector<double> w = h.w;
  if (std::abs(h.rho - rho) <= kSpaceTolerance) {
    const double w0 = w[0];
    for (double& v : w) v -= w0;
  }
  // Weighted samples of smooth functions carry powers of u^(1 - h.rho); those
  // of fractional integrals carry powers of u^mu.
  const double basis = h.rho < 1.0 ? std::min(mu, 1.0 - h.rho) : mu;
  const std::vector<double> k =
      FractionalIntegral(grid, 1.0 - mu, h.rho, 1.0, basis).apply(std::span<const double>(w));

  const auto& u = grid->offsets();
  std::vector<double> dk(n + 1);
  for (int j = 1; j < n; ++j) {
    const double h1 = u[j] - u[j - 1];
    const double h2 = u[j + 1] - u[j];
    dk[j] = -h2 / (h1 * (h1 + h2)) * k[j - 1] + (h2 - h1) / (h1 * h2) * k[j] +
            h1 / (h2 * (h1 + h2)) * k[j + 1];
  }
  {
    const double h1 = u[n - 1] - u[n - 2];
    const double h2 = u[n] - u[n - 1];
    dk[n] = h2 / (h1 * (h1 + h2)) * k[n - 2] - (h1 + h2) / (h1 * h2) * k[n - 1] +
            (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * k[n];
  }
  for (int j = 1; j <= n; ++j) {
    if (rho != 1.0) dk[j] *= std::pow(u[j], 1.0 - rho);
  }
  dk[0] = dk[1];
  return WeightedFunction(grid, std::move(dk), rho, false);
}

}  // namespace frackit::fracops
