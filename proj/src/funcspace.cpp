#include "frackit/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frackit/errors.hpp"
#include "frackit/special.hpp"

namespace frackit {

namespace {

constexpr double kSpaceTolerance = 1e-14;

double weight_from_offset(double u, double rho) {
  if (u == 0.0) return rho < 1.0 ? 0.0 : 1.0;
  return std::pow(u, 1.0 - rho);
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    std::ostringstream os;
    os << "space index rho must lie in (0, 1], got " << rho;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

Order::Order(double mu, double nu) : mu_(mu), nu_(nu), rho_(mu + nu * (1.0 - mu)) {
  if (!(mu > 0.0 && mu < 1.0)) {
    std::ostringstream os;
    os << "order mu must lie in (0, 1), got " << mu;
    throw InvalidArgument(os.str());
  }
  if (!(nu >= 0.0 && nu <= 1.0)) {
    std::ostringstream os;
    os << "type nu must lie in [0, 1], got " << nu;
    throw InvalidArgument(os.str());
  }
}

PsiMap::PsiMap(ScalarFn psi, ScalarFn dpsi, double a, double b)
    : psi_(std::move(psi)), dpsi_(std::move(dpsi)), a_(a), b_(b) {
  if (!psi_ || !dpsi_) throw InvalidArgument("PsiMap: psi and its derivative are required");
  if (!(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && a < b)) {
    std::ostringstream os;
    os << "PsiMap: need 0 <= a < b, got a=" << a << ", b=" << b;
    throw InvalidArgument(os.str());
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamplePoints; ++k) {
    const double t = k + 1 == kSamplePoints ? b : a + (b - a) * k / (kSamplePoints - 1);
    const double value = psi_(t);
    const double slope = dpsi_(t);
    if (!std::isfinite(value) || !std::isfinite(slope)) {
      std::ostringstream os;
      os << "PsiMap: non-finite value at t=" << t;
      throw InvalidArgument(os.str());
    }
    if (!(slope > 0.0)) {
      std::ostringstream os;
      os << "PsiMap: derivative must be positive, got " << slope << " at t=" << t;
      throw InvalidArgument(os.str());
    }
    if (!(value > prev)) {
      std::ostringstream os;
      os << "PsiMap: psi is not strictly increasing near t=" << t;
      throw InvalidArgument(os.str());
    }
    prev = value;
  }
  psi_a_ = psi_(a_);
  span_ = psi_(b_) - psi_a_;
}

PsiMap PsiMap::identity(double a, double b) {
  return PsiMap([](double t) { return t; }, [](double) { return 1.0; }, a, b);
}

double PsiMap::offset(double t) const {
  const double slack = kSpaceTolerance * std::max(1.0, std::abs(b_));
  if (!(t >= a_ - slack && t <= b_ + slack)) {
    std::ostringstream os;
    os << "t=" << t << " outside [" << a_ << ", " << b_ << "]";
    throw DomainError(os.str());
  }
  if (t <= a_) return 0.0;
  return std::max(0.0, psi_(std::min(t, b_)) - psi_a_);
}

Grid::Grid(PsiMap psi, int n, double grading) : psi_(std::move(psi)), n_(n), grading_(grading) {
  if (n < 2) throw InvalidArgument("make_grid: need N >= 2");
  if (!(grading >= 1.0) || !std::isfinite(grading)) {
    throw InvalidArgument("make_grid: grading exponent must be >= 1");
  }
  const double a = psi_.a();
  const double b = psi_.b();
  nodes_.resize(n + 1);
  psi_nodes_.resize(n + 1);
  offsets_.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    nodes_[j] = j == n ? b : a + (b - a) * std::pow(static_cast<double>(j) / n, grading);
  }
  const double psi_a = psi_(a);
  for (int j = 0; j <= n; ++j) {
    psi_nodes_[j] = psi_(nodes_[j]);
    offsets_[j] = j == 0 ? 0.0 : psi_nodes_[j] - psi_a;
    if (j > 0 && !(psi_nodes_[j] > psi_nodes_[j - 1] && offsets_[j] > offsets_[j - 1])) {
      std::ostringstream os;
      os << "make_grid: Psi is not strictly increasing across nodes " << j - 1 << " and " << j
         << " (mesh too fine for double precision?)";
      throw InvalidArgument(os.str());
    }
  }
}

bool Grid::same_nodes(const Grid& other) const {
  if (this == &other) return true;
  if (n_ != other.n_) return false;
  for (int j = 0; j <= n_; ++j) {
    const double scale = std::max(1.0, std::abs(nodes_[j]));
    if (std::abs(nodes_[j] - other.nodes_[j]) > 1e-12 * scale) return false;
    const double pscale = std::max(1.0, std::abs(psi_nodes_[j]));
    if (std::abs(psi_nodes_[j] - other.psi_nodes_[j]) > 1e-12 * pscale) return false;
  }
  return true;
}

WeightedFunction::WeightedFunction(GridPtr g, std::vector<double> values, double r, bool known)
    : grid(std::move(g)), w(std::move(values)), rho(r), limit_known(known) {
  if (!grid) throw InvalidArgument("WeightedFunction: missing grid");
  check_rho(rho);
  if (w.size() != static_cast<std::size_t>(grid->size()) + 1) {
    std::ostringstream os;
    os << "WeightedFunction: expected " << grid->size() + 1 << " values, got " << w.size();
    throw InvalidArgument(os.str());
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!std::isfinite(w[j])) {
      std::ostringstream os;
      os << "WeightedFunction: non-finite value at node " << j;
      throw InvalidArgument(os.str());
    }
  }
}

GridPtr make_grid(const PsiMap& psi, int n, double grading) {
  return std::make_shared<const Grid>(psi, n, grading);
}

double default_grading(const Order& order) { return std::max(1.0, 1.0 / order.rho()); }

double weight(const PsiMap& psi, double rho, double t) {
  check_rho(rho);
  return weight_from_offset(psi.offset(t), rho);
}

double weight(const PsiMap& psi, const Order& order, double t) {
  return weight(psi, order.rho(), t);
}

double omega(const PsiMap& psi, double rho, double t) {
  check_rho(rho);
  const double u = psi.offset(t);
  if (u == 0.0 && rho < 1.0) throw DomainError("omega: singular at t = a when rho < 1");
  const double power = rho == 1.0 ? 1.0 : std::pow(u, rho - 1.0);
  return power / special::gamma_fn(rho);
}

double omega(const PsiMap& psi, const Order& order, double t) { return omega(psi, order.rho(), t); }

double weighted_norm(std::span<const double> w) {
  double m = 0.0;
  for (double v : w) m = std::max(m, std::abs(v));
  return m;
}

double weighted_norm(const WeightedFunction& f) { return weighted_norm(f.w); }

WeightedFunction to_weighted(GridPtr grid, double rho, std::span<const double> y_interior,
                             double w0) {
  check_rho(rho);
  if (!grid) throw InvalidArgument("to_weighted: missing grid");
  const int n = grid->size();
  if (y_interior.size() != static_cast<std::size_t>(n)) {
    std::ostringstream os;
    os << "to_weighted: expected " << n << " interior values, got " << y_interior.size();
    throw InvalidArgument(os.str());
  }
  std::vector<double> w(n + 1);
  w[0] = w0;
  const auto& u = grid->offsets();
  for (int j = 1; j <= n; ++j) {
    const double y = y_interior[j - 1];
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "to_weighted: non-finite value at node " << j;
      throw InvalidArgument(os.str());
    }
    w[j] = rho == 1.0 ? y : weight_from_offset(u[j], rho) * y;
  }
  return WeightedFunction(std::move(grid), std::move(w), rho);
}

WeightedFunction to_weighted(GridPtr grid, const Order& order, std::span<const double> y_interior,
                             double w0) {
  return to_weighted(std::move(grid), order.rho(), y_interior, w0);
}

std::vector<double> from_weighted(const WeightedFunction& f) {
  const auto& u = f.grid->offsets();
  std::vector<double> y(f.w.size());
  if (f.rho == 1.0) {
    y[0] = f.w[0];
  } else if (f.w[0] != 0.0) {
    y[0] = std::copysign(std::numeric_limits<double>::infinity(), f.w[0]);
  } else {
    y[0] = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t j = 1; j < y.size(); ++j) {
    y[j] = f.rho == 1.0 ? f.w[j] : f.w[j] / weight_from_offset(u[j], f.rho);
  }
  return y;
}

WeightedFunction rewrap(const WeightedFunction& f, double rho_out) {
  check_rho(rho_out);
  const double shift = f.rho - rho_out;
  const auto& u = f.grid->offsets();
  std::vector<double> w(f.w.size());
  for (std::size_t j = 1; j < w.size(); ++j) {
    w[j] = shift == 0.0 ? f.w[j] : std::pow(u[j], shift) * f.w[j];
  }
  bool known = f.limit_known;
  if (std::abs(shift) <= kSpaceTolerance) {
    w[0] = f.w[0];
  } else if (shift > 0.0) {
    w[0] = 0.0;
    known = true;
  } else if (f.w[0] == 0.0) {
    w[0] = w[1];
    known = false;
  } else {
    throw DomainError("rewrap: function is unbounded at t = a in the target space");
  }
  return WeightedFunction(f.grid, std::move(w), rho_out, known);
}

}  // namespace frackit
