#pragma once

#include "proxcert/problem.hpp"
#include "proxcert/rng.hpp"
#include "proxcert/types.hpp"

#include <vector>

namespace proxcert::testing {

// Bitwise equality of two vectors.
inline bool same_bits(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

inline Vector vec(std::initializer_list<double> vals) {
  Vector v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

inline Matrix mat(int rows, int cols, std::initializer_list<double> vals) {
  Matrix m(rows, cols);
  int i = 0;
  for (double x : vals) {
    m(i / cols, i % cols) = x;
    ++i;
  }
  return m;
}

// Scalar quadratic (curvature/2) x^2 with a hand-picked declared smoothness
// bound, solution {0}. Used to drive solver checks where the contraction
// speed must be controlled exactly.
inline CompositeProblem scalar_quadratic(double curvature, double declared_lipschitz) {
  CompositeProblem p;
  p.family = "custom_scalar";
  p.f.dimension = 1;
  p.f.value = [curvature](const Vector& x) { return 0.5 * curvature * x[0] * x[0]; };
  p.f.gradient = [curvature](const Vector& x) {
    Vector g(1);
    g[0] = curvature * x[0];
    return g;
  };
  p.f.lipschitz = declared_lipschitz;
  p.g.kind = RegularizerKind::zero;
  p.solution_set.variant = SolutionSetModel::Variant::singleton;
  p.solution_set.point = Vector::Zero(1);
  p.phi_star = 0.0;
  return p;
}

}  // namespace proxcert::testing
