#pragma once

#include "proxcert/problem.hpp"
#include "proxcert/report.hpp"
#include "proxcert/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace proxcert {

// Growth / error-bound properties measured by sampling.
//   rsc - <G(y), y - proj> / dist^2   (restricted secant lower curvature)
//   geb - |G(y)| / dist               (gradient-type error bound)
//   qg  - 2 (phi(y) - phi_star) / dist^2  (quadratic growth)
enum class PropertyKind { rsc, geb, qg };

// Which first-order object G(y) the property quantifies:
//   original - grad f, unconstrained smooth problems
//   modified - projected-gradient mapping over the polyhedron
//   extended - proximal-gradient mapping, samples restricted to the
//              sublevel set phi <= phi_star + omega
enum class Variant { original, modified, extended };

std::string to_string(PropertyKind k);
std::string to_string(Variant v);
PropertyKind property_from_string(const std::string& s);
Variant variant_from_string(const std::string& s);

// Natural variant for a problem's regularizer: zero -> original,
// indicator -> modified, l1 -> extended.
Variant variant_for_problem(const CompositeProblem& p);

struct PropertyEstimate {
  PropertyKind property = PropertyKind::qg;
  Variant variant = Variant::original;
  double constant = 0.0;  // min of per-sample ratios
  double gamma = 0.0;
  double omega = kInf;
  int samples = 0;
  std::uint64_t seed = 0;
  Vector witness;          // sample attaining the minimum
  double witness_ratio = 0.0;
  bool upper_bound = true;  // sampled infima always over-estimate
};

// Radial sampling around a stored solution point: direction uniform on the
// sphere, radius log-uniform on [1e-3, 1e2]. modified projects onto the
// polyhedron; extended backtracks the radius into the sublevel set
// phi <= phi_star + omega. Points closer to the solution set than 1e-8 are
// discarded and redrawn; exceeding a 100 * n_samples draw budget is an
// error. Deterministic per seed, and a longer run extends a shorter one.
std::vector<Vector> sample_points(const CompositeProblem& p, int n_samples,
                                  std::uint64_t seed, Variant variant,
                                  double omega);

PropertyEstimate estimate_constant(const CompositeProblem& p, PropertyKind property,
                                   Variant variant, double gamma, double omega,
                                   int n_samples, std::uint64_t seed);

// Constants implied by a quadratic-growth constant nu along the
// equivalence chain for the original properties: rsc = nu/2, geb = nu/2,
// and qg = nu/4 after a round trip.
struct ChainConstants {
  double rsc = 0.0;
  double geb = 0.0;
  double qg = 0.0;
};
ChainConstants chain_from_qg(double nu);

// Mapping-based chain: from a quadratic-growth constant tau2 at step scale
// gamma (gamma >= L), the implied error-bound and secant constants are
//   geb = tau2 gamma^2 / ((2 gamma + tau2)(gamma + L)),  rsc = geb^2 / gamma.
// The forward direction keeps the constant: forward_all = tau2.
struct ExtendedChainConstants {
  double geb = 0.0;
  double rsc = 0.0;
  double forward_all = 0.0;
};
ExtendedChainConstants chain_from_extended_qg(double tau2, double gamma, double L);

// Samples one point set and checks, pointwise and at the constant level,
// that the three properties order the way the equivalence chain predicts.
// Also audits stored solution points against phi_star, which is what makes
// a corrupted optimal value surface as a reported violation.
Report verify_chain(const CompositeProblem& p, double gamma, double omega,
                    int n_samples, std::uint64_t seed);

struct HoffmanEstimate {
  double theta = 0.0;  // min of |E y - t_star|^2 / dist^2 over samples
  int samples = 0;
  std::uint64_t seed = 0;
  Vector witness;
  double witness_ratio = 0.0;
  bool upper_bound = true;
};

// Sampled error-bound constant of the system {E x = t_star, A x <= b}
// relative to the inequality set {A x <= b}. The system must be consistent.
HoffmanEstimate hoffman_estimate(const Matrix& E, const Matrix& A, const Vector& b,
                                 const Vector& t_star, int n_samples,
                                 std::uint64_t seed);

// Composition-over-polyhedron audit. With theta the error-bound constant of
// the solution system and C1 = C2 = mu * theta / 2, checks on fresh
// feasible samples:
//   strengthened secant:  <G, y - proj> >= |G|^2/(2 gamma) + C1 dist^2
//   value growth:         f(y) >= f_star + C2 dist^2
//   natural residual:     C3 dist <= |y - P_Q(y - grad f(y))|,
//                         C3 = C1 / (gamma * max(1, 1/gamma)).
// theta comes from the instance when known analytically; otherwise it is
// fit on a training sample set and validated on the held-out checks here.
// Requires a composition structure and gamma >= lipschitz_hat.
Report verify_case_study(const CompositeProblem& p, double gamma, int n_samples,
                         std::uint64_t seed);

}  // namespace proxcert
