#include "proxcert/certificates.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/linalg.hpp"
#include "proxcert/mappings.hpp"
#include "proxcert/projection.hpp"
#include "proxcert/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace proxcert {

std::string to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::rsc:
      return "rsc";
    case PropertyKind::geb:
      return "geb";
    case PropertyKind::qg:
      return "qg";
  }
  throw InputError("to_string: unknown property");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::original:
      return "original";
    case Variant::modified:
      return "modified";
    case Variant::extended:
      return "extended";
  }
  throw InputError("to_string: unknown variant");
}

PropertyKind property_from_string(const std::string& s) {
  if (s == "rsc") return PropertyKind::rsc;
  if (s == "geb") return PropertyKind::geb;
  if (s == "qg") return PropertyKind::qg;
  throw InputError("property_from_string: unknown property '" + s + "'");
}

Variant variant_from_string(const std::string& s) {
  if (s == "original") return Variant::original;
  if (s == "modified") return Variant::modified;
  if (s == "extended") return Variant::extended;
  throw InputError("variant_from_string: unknown variant '" + s + "'");
}

namespace {

constexpr double kDistanceFloor = 1e-8;
constexpr double kRadiusLo = 1e-3;
constexpr double kRadiusHi = 1e2;

// The first-order object the variant quantifies at y.
Vector variant_mapping(const CompositeProblem& p, Variant variant, double gamma,
                       const Vector& y) {
  switch (variant) {
    case Variant::original:
      return p.f.gradient(y);
    case Variant::modified:
      return gradient_mapping(p.f, p.polyhedron(), y, gamma).mapping;
    case Variant::extended:
      return prox_gradient_mapping(p.f, p.g, y, gamma).mapping;
  }
  throw InputError("variant_mapping: unknown variant");
}

double property_ratio(const CompositeProblem& p, PropertyKind property,
                      Variant variant, double gamma, const Vector& y) {
  const DistanceResult d = distance_to_solution_set(p, y);
  const double d2 = d.dist * d.dist;
  if (property == PropertyKind::qg)
    return 2.0 * (p.objective(y) - p.phi_star) / d2;
  const Vector g = variant_mapping(p, variant, gamma, y);
  if (property == PropertyKind::geb) return g.norm() / d.dist;
  return g.dot(y - d.projection) / d2;
}

}  // namespace

std::vector<Vector> sample_points(const CompositeProblem& p, int n_samples,
                                  std::uint64_t seed, Variant variant,
                                  double omega) {
  if (n_samples <= 0)
    throw InputError("sample_points: sample count must be positive");
  if (variant == Variant::extended && (std::isnan(omega) || omega <= 0.0))
    throw InputError("sample_points: sublevel width must be positive");

  const int n = p.dimension();
  const Vector& anchor = p.solution_set.anchor();
  const Polyhedron* q = p.polyhedron();

  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  const long long budget = 100LL * n_samples;
  for (long long draw = 0;
       draw < budget && out.size() < static_cast<std::size_t>(n_samples); ++draw) {
    const Vector dir = rng.sphere(n);
    double radius = rng.log_uniform(kRadiusLo, kRadiusHi);
    Vector y = anchor + radius * dir;
    if (variant == Variant::modified && q != nullptr && !q->trivial())
      y = project_polyhedron(*q, y);
    if (variant == Variant::extended) {
      bool inside = false;
      for (int halvings = 0; halvings < 200; ++halvings) {
        const double value = p.objective(y);
        if (std::isfinite(value) && value <= p.phi_star + omega) {
          inside = true;
          break;
        }
        radius *= 0.5;
        y = anchor + radius * dir;
      }
      if (!inside) continue;
    }
    if (distance_to_solution_set(p, y).dist < kDistanceFloor) continue;
    out.push_back(std::move(y));
  }
  if (out.size() < static_cast<std::size_t>(n_samples))
    throw SamplingError("sample_points: draw budget exhausted before collecting " +
                        std::to_string(n_samples) + " valid samples");
  return out;
}

PropertyEstimate estimate_constant(const CompositeProblem& p, PropertyKind property,
                                   Variant variant, double gamma, double omega,
                                   int n_samples, std::uint64_t seed) {
  if (n_samples <= 0)
    throw InputError("estimate_constant: sample count must be positive");
  if (std::isnan(gamma) || gamma <= 0.0)
    throw InputError("estimate_constant: step scale must be positive");

  PropertyEstimate e;
  e.property = property;
  e.variant = variant;
  e.gamma = gamma;
  e.omega = omega;
  e.samples = n_samples;
  e.seed = seed;

  double best = kInf;
  for (const Vector& y : sample_points(p, n_samples, seed, variant, omega)) {
    const double ratio = property_ratio(p, property, variant, gamma, y);
    if (ratio < best) {
      best = ratio;
      e.witness = y;
    }
  }
  e.constant = best;
  e.witness_ratio = best;
  e.upper_bound = true;
  return e;
}

ChainConstants chain_from_qg(double nu) {
  if (std::isnan(nu) || nu <= 0.0)
    throw InputError("chain_from_qg: growth constant must be positive");
  return {nu / 2.0, nu / 2.0, nu / 4.0};
}

ExtendedChainConstants chain_from_extended_qg(double tau2, double gamma, double L) {
  if (std::isnan(tau2) || tau2 <= 0.0)
    throw InputError("chain_from_extended_qg: growth constant must be positive");
  if (std::isnan(gamma) || gamma <= 0.0)
    throw InputError("chain_from_extended_qg: step scale must be positive");
  if (std::isnan(L) || L < 0.0)
    throw InputError("chain_from_extended_qg: smoothness bound must be nonnegative");
  if (gamma < L)
    throw InputError("chain_from_extended_qg: step scale below the smoothness bound");
  ExtendedChainConstants e;
  e.geb = tau2 * gamma * gamma / ((2.0 * gamma + tau2) * (gamma + L));
  e.rsc = e.geb * e.geb / gamma;
  e.forward_all = tau2;
  return e;
}

Variant variant_for_problem(const CompositeProblem& p) {
  switch (p.g.kind) {
    case RegularizerKind::zero:
      return Variant::original;
    case RegularizerKind::indicator:
      return Variant::modified;
    case RegularizerKind::l1:
      return Variant::extended;
  }
  throw InputError("variant_for_problem: unknown regularizer kind");
}

Report verify_chain(const CompositeProblem& p, double gamma, double omega,
                    int n_samples, std::uint64_t seed) {
  if (n_samples <= 0)
    throw InputError("verify_chain: sample count must be positive");
  if (std::isnan(gamma) || gamma < p.f.lipschitz)
    throw InputError("verify_chain: step scale below the smoothness bound");

  Report r;
  r.suite = "chain";
  r.family = p.family;
  r.gamma = gamma;
  r.omega = omega;
  r.samples = n_samples;
  r.seed = seed;
  r.proxy_distances = p.solution_set.distances_are_upper_bounds();

  // Stored solution points must reproduce the recorded optimal value. A
  // corrupted phi_star shows up here before it skews any ratio below.
  const std::vector<Vector> stored = p.solution_set.stored_points();
  const double value_tol = 1e-10 * (1.0 + std::abs(p.phi_star));
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const double drift = std::abs(p.objective(stored[i]) - p.phi_star);
    if (drift > value_tol)
      r.violations.push_back({"stored_point_objective",
                              static_cast<long long>(i), drift, value_tol,
                              stored[i]});
  }

  const Variant variant = variant_for_problem(p);
  const std::vector<Vector> pts = sample_points(p, n_samples, seed, variant, omega);

  double qg_hat = kInf;
  double geb_hat = kInf;
  double rsc_hat = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vector& y = pts[i];
    const DistanceResult d = distance_to_solution_set(p, y);
    const double d2 = d.dist * d.dist;
    const double gap = p.objective(y) - p.phi_star;
    if (gap < -slack_for(p.phi_star))
      r.violations.push_back(
          {"nonnegative_gap", static_cast<long long>(i), gap, 0.0, y});

    const Vector g = variant_mapping(p, variant, gamma, y);
    const double rsc_ratio = g.dot(y - d.projection) / d2;
    const double geb_ratio = g.norm() / d.dist;
    const double qg_ratio = 2.0 * gap / d2;

    // The secant value never exceeds residual norm times distance.
    if (rsc_ratio > geb_ratio + slack_for(geb_ratio))
      r.violations.push_back(
          {"secant_vs_residual", static_cast<long long>(i), rsc_ratio, geb_ratio, y});

    qg_hat = std::min(qg_hat, qg_ratio);
    geb_hat = std::min(geb_hat, geb_ratio);
    rsc_hat = std::min(rsc_hat, rsc_ratio);
  }

  r.metrics["qg_hat"] = qg_hat;
  r.metrics["geb_hat"] = geb_hat;
  r.metrics["rsc_hat"] = rsc_hat;

  if (qg_hat > 0.0 && std::isfinite(qg_hat)) {
    const ChainConstants implied = chain_from_qg(qg_hat);
    r.metrics["implied_rsc"] = implied.rsc;
    r.metrics["implied_geb"] = implied.geb;
    r.metrics["implied_qg"] = implied.qg;
    if (rsc_hat < implied.rsc - 1e-6 * (1.0 + implied.rsc))
      r.violations.push_back({"chain_rsc", -1, rsc_hat, implied.rsc, Vector()});
    if (geb_hat < implied.geb - 1e-6 * (1.0 + implied.geb))
      r.violations.push_back({"chain_geb", -1, geb_hat, implied.geb, Vector()});
  } else {
    // A nonpositive growth estimate is already reported through the gap
    // audit; the implied constants are meaningless then.
    r.metrics["implied_rsc"] = 0.0;
    r.metrics["implied_geb"] = 0.0;
    r.metrics["implied_qg"] = 0.0;
  }
  return r;
}

HoffmanEstimate hoffman_estimate(const Matrix& E, const Matrix& A, const Vector& b,
                                 const Vector& t_star, int n_samples,
                                 std::uint64_t seed) {
  if (n_samples <= 0)
    throw InputError("hoffman_estimate: sample count must be positive");
  if (E.rows() == 0 || E.cols() == 0)
    throw InputError("hoffman_estimate: empty equality block");
  if (E.rows() != t_star.size())
    throw InputError("hoffman_estimate: equality rhs size mismatch");
  if (A.rows() != b.size())
    throw InputError("hoffman_estimate: inequality rhs size mismatch");
  if (A.rows() > 0 && A.cols() != E.cols())
    throw InputError("hoffman_estimate: column count mismatch");

  const int n = static_cast<int>(E.cols());
  Polyhedron ineq;
  ineq.A = A;
  ineq.b = b;

  // One point of the full system certifies consistency before any sampling.
  Vector anchor;
  try {
    anchor = project_onto_constraints(min_norm_solve(E, t_star), A, b, E, t_star).point;
  } catch (const NumericalError&) {
    throw ModelError("hoffman_estimate: the solution system is inconsistent");
  }
  if ((E * anchor - t_star).norm() > 1e-8 * (1.0 + t_star.norm()) ||
      (A.rows() > 0 && ineq.max_violation(anchor) > 1e-8))
    throw ModelError("hoffman_estimate: the solution system is inconsistent");

  HoffmanEstimate h;
  h.samples = n_samples;
  h.seed = seed;

  Rng rng(seed);
  double best = kInf;
  int accepted = 0;
  const long long budget = 100LL * n_samples;
  for (long long draw = 0; draw < budget && accepted < n_samples; ++draw) {
    const Vector dir = rng.sphere(n);
    const double radius = rng.log_uniform(kRadiusLo, kRadiusHi);
    Vector y = anchor + radius * dir;
    if (!ineq.trivial()) y = project_polyhedron(ineq, y);
    Vector proj;
    try {
      proj = project_onto_constraints(y, A, b, E, t_star, &anchor).point;
    } catch (const NumericalError&) {
      throw ModelError("hoffman_estimate: projection onto the solution system failed");
    }
    const double dist = (y - proj).norm();
    if (dist < kDistanceFloor) continue;
    const double ratio = (E * y - t_star).squaredNorm() / (dist * dist);
    ++accepted;
    if (ratio < best) {
      best = ratio;
      h.witness = y;
    }
  }
  if (accepted < n_samples)
    throw SamplingError("hoffman_estimate: draw budget exhausted before collecting " +
                        std::to_string(n_samples) + " valid samples");
  h.theta = best;
  h.witness_ratio = best;
  h.upper_bound = true;
  return h;
}

Report verify_case_study(const CompositeProblem& p, double gamma, int n_samples,
                         std::uint64_t seed) {
  if (!p.f.composition.has_value())
    throw ModelError("verify_case_study: no composition structure");
  const CompositionStructure& comp = *p.f.composition;
  if (n_samples <= 0)
    throw InputError("verify_case_study: sample count must be positive");
  if (std::isnan(gamma) || gamma < comp.lipschitz_hat)
    throw InputError("verify_case_study: step scale below the certified bound");

  Report r;
  r.suite = "case-study";
  r.family = p.family;
  r.gamma = gamma;
  r.omega = kInf;
  r.samples = n_samples;
  r.seed = seed;
  r.proxy_distances = p.solution_set.distances_are_upper_bounds();

  // The residual growth constant of the solution system: stored when the
  // family knows it in closed form, otherwise fitted on its own sample
  // stream and validated on the held-out checks below.
  double theta = 0.0;
  if (p.analytic.theta.has_value()) {
    theta = *p.analytic.theta;
  } else {
    const SolutionSetModel& s = p.solution_set;
    if (s.variant != SolutionSetModel::Variant::affine_slice)
      throw ModelError("verify_case_study: no solution slice to fit the constant on");
    const Polyhedron* q = p.polyhedron();
    const Matrix a = q != nullptr ? q->A : Matrix(0, p.dimension());
    const Vector bb = q != nullptr ? q->b : Vector(0);
    theta = hoffman_estimate(s.E, a, bb, s.t_star, n_samples, Rng::derive(seed, 1)).theta;
  }

  const double c1 = 0.5 * comp.mu * theta;
  const double c2 = c1;
  const double c3 = c1 / (gamma * std::max(1.0, 1.0 / gamma));
  r.metrics["theta"] = theta;
  r.metrics["c1"] = c1;
  r.metrics["c2"] = c2;
  r.metrics["c3"] = c3;

  const Polyhedron* q = p.polyhedron();
  const std::vector<Vector> pts =
      sample_points(p, n_samples, Rng::derive(seed, 2), Variant::modified, kInf);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vector& y = pts[i];
    const MappingResult m = gradient_mapping(p.f, q, y, gamma);
    const DistanceResult d = distance_to_solution_set(p, y);
    const double d2 = d.dist * d.dist;
    const long long idx = static_cast<long long>(i);

    const double secant_lhs = m.mapping.dot(y - d.projection);
    const double secant_rhs = m.mapping.squaredNorm() / (2.0 * gamma) + c1 * d2;
    if (secant_lhs < secant_rhs - slack_for(secant_rhs))
      r.violations.push_back({"strengthened_secant", idx, secant_lhs, secant_rhs, y});

    const double growth_lhs = p.f.value(y);
    const double growth_rhs = p.phi_star + c2 * d2;
    if (growth_lhs < growth_rhs - slack_for(growth_rhs))
      r.violations.push_back({"value_growth", idx, growth_lhs, growth_rhs, y});

    const double residual = natural_residual(p.f, q, y);
    const double residual_rhs = c3 * d.dist;
    if (residual < residual_rhs - slack_for(residual_rhs))
      r.violations.push_back({"natural_residual", idx, residual, residual_rhs, y});
  }
  return r;
}

}  // namespace proxcert
