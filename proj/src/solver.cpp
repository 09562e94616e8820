#include "proxcert/solver.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/mappings.hpp"

#include <cmath>

namespace proxcert {

SolverTrace run(const CompositeProblem& p, const Vector& x0, double gamma,
                long long cap, double tol) {
  if (x0.size() != p.dimension()) throw InputError("run: dimension mismatch");
  if (gamma < p.f.lipschitz)
    throw InputError("run: step scale below the smoothness bound");
  if (cap <= 0) throw InputError("run: iteration cap must be positive");
  if (tol < 0.0) throw InputError("run: tolerance must be nonnegative");

  SolverTrace trace;
  trace.gamma = gamma;
  trace.x0 = x0;
  trace.cap = cap;
  trace.tol = tol;
  trace.proxy_distances = p.solution_set.distances_are_upper_bounds();

  Vector x = x0;
  double prev_phi = kInf;
  for (long long k = 0; k <= cap; ++k) {
    const double phi = p.objective(x);
    if (std::isnan(phi) || phi > prev_phi + slack_for(prev_phi))
      throw NumericalError(
          "run: objective increased, the declared smoothness bound is wrong");
    MappingResult m = prox_gradient_mapping(p.f, p.g, x, gamma);
    trace.records.push_back(
        {k, x, phi, distance_to_solution_set(p, x).dist, m.mapping_norm});
    if (m.mapping_norm <= tol || k == cap) break;
    prev_phi = phi;
    x = std::move(m.forward);
  }
  return trace;
}

long long burn_in_index(const CompositeProblem& p, const Vector& x0, double omega) {
  if (std::isnan(omega) || omega <= 0.0)
    throw InputError("burn_in_index: sublevel width must be positive");
  if (omega == kInf) return 1;
  const double d = distance_to_solution_set(p, x0).dist;
  return static_cast<long long>(std::floor(p.f.lipschitz * d * d / (2.0 * omega))) + 1;
}

RateCheck check_sublinear(const SolverTrace& trace, const CompositeProblem& p) {
  RateCheck rc;
  rc.name = "sublinear_gap";
  if (trace.records.empty()) throw InputError("check_sublinear: empty trace");
  const double d0 = trace.records.front().dist;
  rc.bound = 0.5 * trace.gamma * d0 * d0;
  rc.proxy_flagged = trace.proxy_distances;
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    const TraceRecord& r = trace.records[i];
    const double lhs = r.phi - p.phi_star;
    const double rhs = rc.bound / static_cast<double>(r.k);
    ++rc.checked;
    rc.worst = std::max(rc.worst, lhs - rhs);
    if (lhs > rhs + slack_for(rhs))
      rc.violations.push_back({rc.name, r.k, lhs, rhs, r.x});
  }
  return rc;
}

RateCheck check_qlinear_distance(const SolverTrace& trace, double tau, long long m) {
  if (tau <= 0.0) throw InputError("check_qlinear_distance: tau must be positive");
  if (m < 0) throw InputError("check_qlinear_distance: negative start index");
  RateCheck rc;
  rc.name = "qlinear_distance";
  rc.bound = std::sqrt(trace.gamma / (trace.gamma + tau));
  rc.proxy_flagged = trace.proxy_distances;
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    if (trace.records[i].k < m) continue;
    const double before = trace.records[i].dist;
    const double after = trace.records[i + 1].dist;
    if (before < 1e-13) {
      ++rc.skipped;
      continue;
    }
    ++rc.checked;
    rc.worst = std::max(rc.worst, after / before);
    const double rhs = rc.bound * before;
    if (after > rhs + slack_for(rhs))
      rc.violations.push_back(
          {rc.name, trace.records[i + 1].k, after, rhs, trace.records[i + 1].x});
  }
  return rc;
}

RateCheck check_fvalue_contraction(const SolverTrace& trace,
                                   const CompositeProblem& p, double kappa,
                                   long long m) {
  if (kappa <= 0.0 || kappa >= 2.0 * trace.gamma)
    throw InputError("check_fvalue_contraction: kappa must lie in (0, 2 gamma)");
  if (m < 0) throw InputError("check_fvalue_contraction: negative start index");
  RateCheck rc;
  rc.name = "fvalue_contraction";
  rc.bound = 1.0 - kappa / (2.0 * trace.gamma);
  rc.proxy_flagged = trace.proxy_distances;
  const double floor_gap = 1e-13 * (1.0 + std::abs(p.phi_star));
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    if (trace.records[i].k < m) continue;
    const double before = trace.records[i].phi - p.phi_star;
    const double after = trace.records[i + 1].phi - p.phi_star;
    if (before < floor_gap) {
      ++rc.skipped;
      continue;
    }
    ++rc.checked;
    rc.worst = std::max(rc.worst, after / before);
    const double rhs = rc.bound * before;
    if (after > rhs + slack_for(rhs))
      rc.violations.push_back(
          {rc.name, trace.records[i + 1].k, after, rhs, trace.records[i + 1].x});
  }
  return rc;
}

RateCheck check_rlinear_iterates(const SolverTrace& trace,
                                 const CompositeProblem& p, const Vector& xstar,
                                 double kappa, long long m) {
  if (!trace.converged() || trace.records.back().gmap_norm > 1e-12)
    throw InputError("check_rlinear_iterates: trace did not converge to 1e-12");
  if (kappa <= 0.0 || kappa >= 2.0 * trace.gamma)
    throw InputError("check_rlinear_iterates: kappa must lie in (0, 2 gamma)");
  if (m < 0 || m >= static_cast<long long>(trace.records.size()))
    throw InputError("check_rlinear_iterates: start index outside the trace");
  if (xstar.size() != trace.x0.size())
    throw InputError("check_rlinear_iterates: dimension mismatch");

  RateCheck rc;
  rc.name = "rlinear_iterates";
  rc.proxy_flagged = trace.proxy_distances;
  const double rho = 1.0 - kappa / (2.0 * trace.gamma);
  rc.bound = rho;
  const double gap_m = trace.records[static_cast<std::size_t>(m)].phi - p.phi_star;
  const double geometric_tail = 1.0 / (1.0 - std::sqrt(rho));
  rc.envelope = (2.0 * gap_m / trace.gamma) * geometric_tail * geometric_tail;

  double decay = 1.0;
  for (std::size_t i = static_cast<std::size_t>(m) + 1; i < trace.records.size(); ++i) {
    decay *= rho;
    const double lhs = (trace.records[i].x - xstar).squaredNorm();
    const double rhs = rc.envelope * decay;
    ++rc.checked;
    rc.worst = std::max(rc.worst, lhs - rhs);
    if (lhs > rhs + slack_for(rhs))
      rc.violations.push_back({rc.name, trace.records[i].k, lhs, rhs, trace.records[i].x});
  }
  return rc;
}

}  // namespace proxcert
