#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frackit/funcspace.hpp"
#include "frackit/solver.hpp"

namespace frackit::stability {

enum class CertificateKind { HU, GHU, HUR, GHUR };

std::string to_string(CertificateKind kind);

/// Outcome of a stability check. Every per-node vector has one entry per grid
/// node; margins are bound - observed, and the verdict holds iff none is
/// below the certificate's tolerance.
struct StabilityCertificate {
  CertificateKind kind = CertificateKind::HU;
  double epsilon = 0.0;
  double constant = 0.0;  // C_f, C_{f,phi}, or Psi_f(eps)
  std::vector<double> bound_profile;
  std::vector<double> observed;
  std::vector<double> margins;
  bool verdict = false;
  double tolerance = 0.0;
  std::string note;

  // Filled by the distance checks.
  bool residual_verdict = false;
  double distance = 0.0;
  double bound = 0.0;
  double lambda = 0.0;
};

/// Comparison function phi, sampled at the grid nodes (raw values). Must be
/// nondecreasing, positive after t = a, and may vanish at t = a.
struct PhiFunction {
  PhiFunction(GridPtr grid, std::vector<double> values);

  GridPtr grid;
  std::vector<double> values;
  bool nondecreasing = true;
};

enum class ResidualKind { Constant, PhiScaled };

/// C_f = ((E_mu(L dPsi^mu) - 1) / L) dPsi^(1-rho) with dPsi = Psi(b) - Psi(a).
double hu_constant(const solver::CauchyProblem& problem);

/// Psi_f(eps) = hu_constant * eps.
double generalized_hu_bound(const solver::CauchyProblem& problem, double epsilon);

/// max_j I^{mu;Psi} phi(t_j) / phi(t_j) over nodes j >= 1. Certified at the
/// nodes only; behaviour between nodes is not checked.
double estimate_lambda(const solver::CauchyProblem& problem, const PhiFunction& phi);

/// C_{f,phi} = lambda / (1 - lambda L) dPsi^(1-rho). Throws HypothesisError
/// unless 0 < lambda L < 1.
double hur_constant(const solver::CauchyProblem& problem, double lambda);

/// Integral-form certificate for an eps-approximate solution.
///
/// Checks at every node, in weighted form,
///   |y* - y*_a Omega - I^{mu;Psi} f(., y*)| <= eps u^mu / Gamma(mu + 1)
/// (or <= eps I^{mu;Psi} phi for the phi-scaled kind), with y*_a = Gamma(rho) w*_0.
/// This is a necessary condition of the differential inequality; the Hilfer
/// derivative of the candidate is not evaluated.
StabilityCertificate residual_certificate(const solver::CauchyProblem& problem,
                                          const WeightedFunction& candidate, double epsilon,
                                          ResidualKind kind,
                                          const std::optional<PhiFunction>& phi = std::nullopt);

struct EpsBound {
  double value = 0.0;
  double eps_series = 0.0;    // (dPsi)^(mu-rho+1)/Gamma(mu+1) + sum_k ...
  double ya_series = 0.0;     // 1/Gamma(rho) + sum_k ...
  std::size_t eps_terms = 0;  // terms summed, including k = 0
  std::size_t ya_terms = 0;
  double eps_tail = 0.0;      // ratio-test bound on the neglected tail
  double ya_tail = 0.0;
};

/// Distance bound between an eps1- and an eps2-approximate solution with
/// initial data ya1, ya2. Each series stops once a ratio-test bound on its
/// tail drops below tail_tol times the partial sum.
EpsBound eps_approx_bound(const solver::CauchyProblem& problem, double eps1, double eps2,
                          double ya1, double ya2, double tail_tol = 1e-12);

struct DistanceOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

/// Ulam-Hyers check: certifies the residual, solves the problem with the
/// candidate's initial data y_a = Gamma(rho) w*_0, and compares
/// ||candidate - solution|| with hu_constant * eps.
StabilityCertificate hu_distance_check(const solver::CauchyProblem& problem,
                                       const WeightedFunction& perturbed, double epsilon,
                                       DistanceOptions options = {});

/// Ulam-Hyers-Rassias check: estimates lambda for phi, certifies the
/// phi-scaled residual, and compares the weighted pointwise distance to the
/// matched solution with hur_constant * eps * phi(t_j) at every node.
StabilityCertificate hur_distance_check(const solver::CauchyProblem& problem,
                                        const WeightedFunction& perturbed, double epsilon,
                                        const PhiFunction& phi, DistanceOptions options = {});

}  // namespace frackit::stability
