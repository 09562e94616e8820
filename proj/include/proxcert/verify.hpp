#pragma once

#include "proxcert/certificates.hpp"
#include "proxcert/problem.hpp"
#include "proxcert/report.hpp"
#include "proxcert/solver.hpp"

#include <cstdint>
#include <optional>

namespace proxcert {

// Pointwise first-order inequality audit on sampled points and pairs:
// proximal descent, its secant strengthening, the Cauchy-Schwarz ordering,
// two-sided growth and composition growth when a composition structure is
// present, stationarity of stored solution points, and the reduction
// identities between the mapping flavors.
Report verify_pointwise(const CompositeProblem& p, double gamma, int n_samples,
                        std::uint64_t seed);

struct RatesConfig {
  double gamma = 0.0;          // resolved step scale
  double omega = kInf;
  long long iters = 500;
  double tol = 0.0;
  int samples = 10000;         // for certified constants when needed
  std::uint64_t seed = 0;
  std::optional<Vector> x0;    // default: origin
};

// Runs the solver and checks the sublinear bound, per-step distance
// contraction, objective-gap contraction, and the iterate envelope, using
// analytic constants when the instance stores them and sampled certified
// constants otherwise.
Report verify_rates(const CompositeProblem& p, const RatesConfig& cfg);

}  // namespace proxcert
