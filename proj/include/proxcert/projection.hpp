#pragma once

#include "proxcert/problem.hpp"
#include "proxcert/types.hpp"

namespace proxcert {

struct ProjectionResult {
  Vector point;
  double kkt_residual = 0.0;
  int iterations = 0;
};

// Euclidean projection onto {x : A x <= b, E x = t}. Either block may be
// empty. Primal active-set iteration on the inequalities with deterministic
// tie-breaking; the working-set subproblems are solved as minimum-norm
// corrections, so rank-deficient constraint blocks are fine. `start`, when
// given and feasible, seeds the iteration; otherwise a feasible point is
// derived first. Raises NumericalError when the system looks empty or
// inconsistent, or the working set cycles past its iteration budget.
ProjectionResult project_onto_constraints(const Vector& y,
                                          const Matrix& A, const Vector& b,
                                          const Matrix& E, const Vector& t,
                                          const Vector* start = nullptr);

// Euclidean projection onto a polyhedron. Closed forms for the trivial,
// single-halfspace, and axis-aligned box cases; active-set otherwise.
// KKT residual of the result is at most 1e-10.
Vector project_polyhedron(const Polyhedron& q, const Vector& y);

ProjectionResult project_polyhedron_full(const Polyhedron& q, const Vector& y);

}  // namespace proxcert
