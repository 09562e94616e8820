#include "proxcert/verify.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/mappings.hpp"
#include "proxcert/projection.hpp"
#include "proxcert/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace proxcert {

namespace {

// Worst deviation of gamma * (z - p) from the subdifferential of the
// weighted l1 norm at p; zero for an exact soft-threshold step.
double l1_prox_optimality(const Vector& z, const Vector& pt, double gamma,
                          double weight) {
  double worst = 0.0;
  for (int j = 0; j < z.size(); ++j) {
    const double s = gamma * (z[j] - pt[j]);
    const double off = pt[j] != 0.0 ? std::abs(s - (pt[j] > 0.0 ? weight : -weight))
                                    : std::max(std::abs(s) - weight, 0.0);
    worst = std::max(worst, off);
  }
  return worst;
}

}  // namespace

Report verify_pointwise(const CompositeProblem& p, double gamma, int n_samples,
                        std::uint64_t seed) {
  if (n_samples <= 0)
    throw InputError("verify_pointwise: sample count must be positive");
  if (std::isnan(gamma) || gamma < p.f.lipschitz)
    throw InputError("verify_pointwise: step scale below the smoothness bound");

  Report r;
  r.suite = "pointwise";
  r.family = p.family;
  r.gamma = gamma;
  r.omega = kInf;
  r.samples = n_samples;
  r.seed = seed;
  r.proxy_distances = p.solution_set.distances_are_upper_bounds();

  const Polyhedron* q = p.polyhedron();
  const bool with_composition = p.f.composition.has_value();
  const bool growth_applicable =
      with_composition && gamma >= p.f.composition->lipschitz_hat;

  // Stored solution points must be stationary for the forward step.
  const std::vector<Vector> stored = p.solution_set.stored_points();
  double worst_stationarity = 0.0;
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const double norm = prox_gradient_mapping(p.f, p.g, stored[i], gamma).mapping_norm;
    worst_stationarity = std::max(worst_stationarity, norm);
    if (norm > 1e-9)
      r.violations.push_back(
          {"stationarity", static_cast<long long>(i), norm, 1e-9, stored[i]});
  }

  const Variant variant = variant_for_problem(p);
  const std::vector<Vector> pts = sample_points(p, n_samples, seed, variant, kInf);
  const std::size_t count = pts.size();

  double worst_descent = kInf;
  double worst_growth_lower = kInf;
  double worst_growth_upper = kInf;
  for (std::size_t i = 0; i < count; ++i) {
    const Vector& xbar = pts[i];
    const Vector& x = pts[(i + 1) % count];
    const long long idx = static_cast<long long>(i);
    const double scale = std::max(std::abs(p.objective(x)), std::abs(p.objective(xbar)));

    const double descent = prox_descent_gap(p, x, xbar, gamma);
    worst_descent = std::min(worst_descent, descent);
    if (descent < -slack_for(scale))
      r.violations.push_back({"prox_descent", idx, descent, 0.0, xbar});

    const MappingResult m = prox_gradient_mapping(p.f, p.g, xbar, gamma);
    const DistanceResult d = distance_to_solution_set(p, xbar);

    // Instantiating the descent inequality at the nearest solution point
    // strengthens the secant value beyond the pure step decrease.
    const double secant = m.mapping.dot(xbar - d.projection);
    const double secant_rhs = p.objective(m.forward) - p.objective(d.projection) +
                              m.mapping.squaredNorm() / (2.0 * gamma);
    if (secant < secant_rhs - slack_for(scale))
      r.violations.push_back({"secant_strengthening", idx, secant, secant_rhs, xbar});

    const double residual_side = m.mapping_norm * d.dist;
    if (secant > residual_side + slack_for(residual_side))
      r.violations.push_back({"secant_vs_residual", idx, secant, residual_side, xbar});

    if (with_composition) {
      const CompositionStructure& comp = *p.f.composition;
      const double bregman =
          p.f.value(x) - p.f.value(xbar) - p.f.gradient(xbar).dot(x - xbar);
      const double lower = 0.5 * comp.mu * (comp.E * (x - xbar)).squaredNorm();
      const double upper = 0.5 * comp.lipschitz_hat * (x - xbar).squaredNorm();
      worst_growth_lower = std::min(worst_growth_lower, bregman - lower);
      worst_growth_upper = std::min(worst_growth_upper, upper - bregman);
      if (bregman < lower - slack_for(scale))
        r.violations.push_back({"growth_lower", idx, bregman, lower, xbar});
      if (bregman > upper + slack_for(scale))
        r.violations.push_back({"growth_upper", idx, bregman, upper, xbar});

      if (growth_applicable) {
        const double gap = composition_growth_gap(p, x, xbar, gamma);
        if (gap < -slack_for(scale))
          r.violations.push_back({"composition_growth", idx, gap, 0.0, xbar});
      }
    }

    // Reduction identities: each regularizer kind must agree with the
    // primitive its forward step is defined through.
    switch (p.g.kind) {
      case RegularizerKind::zero: {
        const double diff = (m.mapping - p.f.gradient(xbar)).norm();
        if (diff > 0.0)
          r.violations.push_back({"reduction_zero", idx, diff, 0.0, xbar});
        break;
      }
      case RegularizerKind::l1: {
        // The subdifferential identity holds at the exact threshold point;
        // the forward point differs from it only by the round-off of the
        // mapping reconstruction, checked separately.
        const Vector z = xbar - p.f.gradient(xbar) / gamma;
        const Vector thresh = prox(p.g, z, gamma);
        const double off = l1_prox_optimality(z, thresh, gamma, p.g.l1_weight);
        const double tol = 1e-9 * (1.0 + p.g.l1_weight);
        if (off > tol)
          r.violations.push_back({"prox_optimality", idx, off, tol, xbar});
        const double drift = (m.forward - thresh).norm();
        const double drift_tol = 1e-12 * (1.0 + xbar.norm());
        if (drift > drift_tol)
          r.violations.push_back({"forward_drift", idx, drift, drift_tol, xbar});
        break;
      }
      case RegularizerKind::indicator: {
        const Vector z = xbar - p.f.gradient(xbar) / gamma;
        const double kkt = project_polyhedron_full(*q, z).kkt_residual;
        if (kkt > 1e-10)
          r.violations.push_back({"projection_kkt", idx, kkt, 1e-10, xbar});
        if (!q->contains(m.forward))
          r.violations.push_back(
              {"forward_feasible", idx, q->max_violation(m.forward), 0.0, xbar});
        break;
      }
    }
  }

  r.metrics["stored_points"] = static_cast<double>(stored.size());
  r.metrics["worst_stationarity"] = worst_stationarity;
  r.metrics["worst_descent_gap"] = worst_descent;
  if (with_composition) {
    r.metrics["worst_growth_lower_margin"] = worst_growth_lower;
    r.metrics["worst_growth_upper_margin"] = worst_growth_upper;
  }
  return r;
}

Report verify_rates(const CompositeProblem& p, const RatesConfig& cfg) {
  Report r;
  r.suite = "rates";
  r.family = p.family;
  r.gamma = cfg.gamma;
  r.omega = cfg.omega;
  r.samples = cfg.samples;
  r.seed = cfg.seed;

  const Vector x0 = cfg.x0.has_value() ? *cfg.x0 : Vector(Vector::Zero(p.dimension()));
  const SolverTrace trace = run(p, x0, cfg.gamma, cfg.iters, cfg.tol);
  r.proxy_distances = trace.proxy_distances;

  const long long m = burn_in_index(p, x0, cfg.omega);

  // Growth and secant constants: stored values when the family knows them,
  // sampled certified estimates otherwise.
  const Variant variant = variant_for_problem(p);
  double tau;
  if (p.analytic.qg.has_value()) {
    tau = *p.analytic.qg;
  } else {
    tau = estimate_constant(p, PropertyKind::qg, variant, cfg.gamma, cfg.omega,
                            cfg.samples, Rng::derive(cfg.seed, 5))
              .constant;
  }
  double kappa;
  if (p.analytic.rsc.has_value()) {
    kappa = *p.analytic.rsc;
  } else {
    kappa = estimate_constant(p, PropertyKind::rsc, variant, cfg.gamma, cfg.omega,
                              cfg.samples, Rng::derive(cfg.seed, 6))
                .constant;
  }
  // The contraction factor needs kappa strictly inside (0, 2 gamma).
  kappa = std::min(kappa, 2.0 * cfg.gamma * (1.0 - 1e-9));

  r.metrics["tau"] = tau;
  r.metrics["kappa"] = kappa;
  r.metrics["burn_in"] = static_cast<double>(m);
  r.metrics["iterations"] = static_cast<double>(trace.iterations());
  r.metrics["converged"] = trace.converged() ? 1.0 : 0.0;
  r.metrics["final_gap"] = trace.records.back().phi - p.phi_star;
  r.metrics["final_dist"] = trace.records.back().dist;

  const auto merge = [&r](const RateCheck& rc) {
    r.metrics[rc.name + "_bound"] = rc.bound;
    r.metrics[rc.name + "_checked"] = static_cast<double>(rc.checked);
    r.metrics[rc.name + "_skipped"] = static_cast<double>(rc.skipped);
    r.metrics[rc.name + "_worst"] = rc.worst;
    r.violations.insert(r.violations.end(), rc.violations.begin(),
                        rc.violations.end());
  };

  merge(check_sublinear(trace, p));
  if (tau > 0.0) {
    merge(check_qlinear_distance(trace, tau, m));
  } else {
    r.violations.push_back({"constant_range", -1, tau, 0.0, Vector()});
  }
  if (kappa > 0.0) {
    merge(check_fvalue_contraction(trace, p, kappa, m));
  } else {
    r.violations.push_back({"constant_range", -1, kappa, 0.0, Vector()});
  }

  const bool envelope_applicable = trace.converged() &&
                                   trace.records.back().gmap_norm <= 1e-12 &&
                                   kappa > 0.0 &&
                                   m < static_cast<long long>(trace.records.size());
  r.metrics["rlinear_applicable"] = envelope_applicable ? 1.0 : 0.0;
  if (envelope_applicable) {
    const RateCheck rc =
        check_rlinear_iterates(trace, p, trace.records.back().x, kappa, m);
    r.metrics[rc.name + "_bound"] = rc.bound;
    r.metrics[rc.name + "_envelope"] = rc.envelope;
    r.metrics[rc.name + "_checked"] = static_cast<double>(rc.checked);
    r.metrics[rc.name + "_worst"] = rc.worst;
    r.violations.insert(r.violations.end(), rc.violations.begin(),
                        rc.violations.end());
  }
  return r;
}

}  // namespace proxcert
