#pragma once

#include "proxcert/problem.hpp"
#include "proxcert/report.hpp"
#include "proxcert/types.hpp"

#include <string>
#include <vector>

namespace proxcert {

struct TraceRecord {
  long long k = 0;
  Vector x;
  double phi = 0.0;
  double dist = 0.0;       // distance to the modeled solution set
  double gmap_norm = 0.0;  // forward-step mapping norm at x
};

// Full iteration history of one solver run. records[i].k == i, starting at
// the initial point (k = 0). The final record has gmap_norm <= tol or
// k == cap. Objective values are non-increasing along records up to 1e-12.
struct SolverTrace {
  std::vector<TraceRecord> records;
  double gamma = 0.0;
  Vector x0;
  long long cap = 0;
  double tol = 0.0;
  bool proxy_distances = false;

  long long iterations() const { return records.empty() ? 0 : records.back().k; }
  bool converged() const {
    return !records.empty() && records.back().gmap_norm <= tol;
  }
};

// Fixed-step proximal-gradient run: x_{k+1} = x_k - mapping(x_k) / gamma,
// applied through the mapping's forward point so the update is exact.
// Stops at the first iterate with mapping norm <= tol, else after cap
// iterations. gamma must be >= the problem's smoothness constant.
SolverTrace run(const CompositeProblem& p, const Vector& x0, double gamma,
                long long cap, double tol);

// First iteration index from which sublevel-restricted guarantees apply:
//   floor(L * dist(x0)^2 / (2 omega)) + 1, and 1 when omega is infinite.
// omega <= 0 is an error.
long long burn_in_index(const CompositeProblem& p, const Vector& x0, double omega);

struct RateCheck {
  std::string name;
  double bound = 0.0;     // constant or factor the check compared against
  double worst = 0.0;     // worst observed margin or ratio
  double envelope = 0.0;  // leading constant of the decay envelope, if any
  long long checked = 0;
  long long skipped = 0;
  bool proxy_flagged = false;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

// phi(x_k) - phi_star <= L * dist(x0)^2 / (2k) for every recorded k >= 1.
RateCheck check_sublinear(const SolverTrace& trace, const CompositeProblem& p);

// dist(x_{k+1}) <= sqrt(gamma / (gamma + tau)) * dist(x_k) for k >= m.
// Steps with dist(x_k) < 1e-13 are skipped as round-off noise. tau must be
// a valid quadratic-growth constant for the run's sublevel horizon.
RateCheck check_qlinear_distance(const SolverTrace& trace, double tau, long long m);

// phi(x_{i+1}) - phi_star <= (1 - kappa/(2 gamma)) (phi(x_i) - phi_star)
// for i >= m. Requires kappa < 2 gamma. Near-zero gaps are skipped.
RateCheck check_fvalue_contraction(const SolverTrace& trace,
                                   const CompositeProblem& p, double kappa,
                                   long long m);

// |x_{k+m} - xstar|^2 <= C rho^k with rho = 1 - kappa/(2 gamma) and
//   C = (2 (phi(x_m) - phi_star) / gamma) * (1 / (1 - sqrt(rho)))^2,
// for every recorded k >= 1. Requires a converged trace (final mapping norm
// <= 1e-12) and kappa < 2 gamma.
RateCheck check_rlinear_iterates(const SolverTrace& trace,
                                 const CompositeProblem& p, const Vector& xstar,
                                 double kappa, long long m);

}  // namespace proxcert
