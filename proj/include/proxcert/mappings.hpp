#pragma once

#include "proxcert/problem.hpp"
#include "proxcert/types.hpp"

namespace proxcert {

// Forward-step summary at a base point. The stored fields satisfy
//   mapping = gamma * (base - forward point of the step subproblem) and
//   forward = base - mapping / gamma   (bitwise, by construction),
// so a solver update that applies `forward` is exactly the mapping step.
struct MappingResult {
  Vector base;
  double gamma = 0.0;
  Vector forward;
  Vector mapping;
  double mapping_norm = 0.0;
};

// argmin_x { g(x) + (gamma/2) |x - z|^2 }. Closed forms: identity for the
// zero regularizer, soft-thresholding at weight/gamma for l1, polyhedral
// projection for an indicator.
Vector prox(const Regularizer& g, const Vector& z, double gamma);

// Mapping of the projected-gradient step over q (pass nullptr or a trivial
// polyhedron for the whole space, where the mapping equals grad f exactly).
MappingResult gradient_mapping(const SmoothTerm& f, const Polyhedron* q,
                               const Vector& xbar, double gamma);

// Mapping of the proximal-gradient step for f + g. Reduces to
// gradient_mapping when g is an indicator and to grad f when g is zero.
MappingResult prox_gradient_mapping(const SmoothTerm& f, const Regularizer& g,
                                    const Vector& xbar, double gamma);

// Signed slack of the proximal descent inequality at (x, xbar):
//   phi(x) - phi(forward) - [ <mapping, x - xbar> + |mapping|^2 / (2 gamma) ].
// Nonnegative (up to round-off) whenever gamma >= L; gamma < L is an error.
double prox_descent_gap(const CompositeProblem& p, const Vector& x,
                        const Vector& xbar, double gamma);

// Signed slack of the composition growth inequality at (x, xbar):
//   f(x) - [ f(forward) + <mapping, x - xbar> + |mapping|^2 / (2 gamma)
//            + (mu/2) |E x - E xbar|^2 ],
// with the mapping taken over the problem's polyhedron. Requires a
// composition structure and gamma >= lipschitz_hat; x must be feasible.
double composition_growth_gap(const CompositeProblem& p, const Vector& x,
                              const Vector& xbar, double gamma);

// |y - P_q(y - grad f(y))|; equals the gradient-mapping norm at gamma = 1.
double natural_residual(const SmoothTerm& f, const Polyhedron* q, const Vector& y);

}  // namespace proxcert
