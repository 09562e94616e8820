#pragma once

#include "proxcert/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace proxcert {

// f(x) = g_in(E x) with g_in strongly convex and gradient-Lipschitz.
// lipschitz_hat = L_in * |E E^T| is the smoothness constant this structure
// certifies for the composite f.
struct CompositionStructure {
  Matrix E;
  Vector t0;  // minimizer of the inner term; serialization rebuilds f from E and t0
  std::function<double(const Vector&)> inner_value;
  std::function<Vector(const Vector&)> inner_gradient;
  double mu = 1.0;               // strong convexity modulus of g_in, > 0
  double inner_lipschitz = 1.0;  // gradient Lipschitz constant of g_in
  double lipschitz_hat = 0.0;    // L_in * |E E^T|
};

// Convex differentiable term with an L-Lipschitz gradient.
struct SmoothTerm {
  int dimension = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz = 0.0;
  std::optional<CompositionStructure> composition;
};

// {x : A x <= b}. Nonemptiness is certified by a stored feasible point.
struct Polyhedron {
  Matrix A;
  Vector b;
  std::optional<Vector> feasible_point;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
  bool trivial() const { return rows() == 0; }

  // Row-wise feasibility with slack 1e-9 * (1 + |b_i|).
  bool contains(const Vector& x) const;
  double max_violation(const Vector& x) const;
};

enum class RegularizerKind { zero, l1, indicator };

// Convex, possibly nonsmooth term g. Three supported shapes: the zero
// function, a weighted l1 norm, and the indicator of a polyhedron.
struct Regularizer {
  RegularizerKind kind = RegularizerKind::zero;
  double l1_weight = 0.0;
  std::optional<Polyhedron> set;

  // Extended-real evaluation; +inf outside the indicator's set.
  double value(const Vector& x) const;
};

struct AnalyticConstants {
  std::optional<double> qg;
  std::optional<double> geb;
  std::optional<double> rsc;
  std::optional<double> theta;  // error-bound constant of the solution system
};

// Description of the optimal set used by distance queries.
//  singleton     - one known point
//  affine_slice  - {x : E x = t_star}, optionally intersected with the
//                  problem's polyhedron; carries one known solution point
//  proxy         - finite reference set from high-accuracy solves; distances
//                  against it are upper bounds and are flagged as such
struct SolutionSetModel {
  enum class Variant { singleton, affine_slice, proxy };

  Variant variant = Variant::singleton;
  Vector point;  // singleton

  Matrix E;
  Vector t_star;
  bool with_polyhedron = false;
  Vector representative;  // affine_slice

  std::vector<Vector> proxy_points;
  double achieved_objective = 0.0;  // proxy

  // A solution point usable as a sampling center.
  const Vector& anchor() const;
  // All stored solution points (one for singleton/affine_slice, the full
  // reference set for proxy).
  std::vector<Vector> stored_points() const;
  bool distances_are_upper_bounds() const { return variant == Variant::proxy; }
};

struct DistanceResult {
  double dist = 0.0;
  Vector projection;
  bool upper_bound = false;
};

// phi = f + g with a model of its optimal set and optimal value.
struct CompositeProblem {
  std::string family;
  std::uint64_t seed = 0;
  SmoothTerm f;
  Regularizer g;
  SolutionSetModel solution_set;
  double phi_star = 0.0;
  AnalyticConstants analytic;

  int dimension() const { return f.dimension; }
  double objective(const Vector& x) const { return f.value(x) + g.value(x); }

  // Polyhedron of an indicator regularizer, nullptr otherwise.
  const Polyhedron* polyhedron() const;

  // Step-scale rule for "auto": lipschitz_hat when a composition structure
  // is present, plain lipschitz otherwise.
  double gamma_auto() const;
};

// Distance from y to the modeled solution set together with the nearest
// modeled point. Exact for singleton and affine_slice models (the latter to
// projection tolerance 1e-10 when a polyhedron is involved); an upper bound
// for proxy models, flagged in the result.
DistanceResult distance_to_solution_set(const CompositeProblem& p, const Vector& y);

// Installs f(x) = (1/2) |E x - t0|^2 on p as a composition with the inner
// quadratic (1/2) |t - t0|^2, so mu = L_in = 1 and the certified smoothness
// constant |E E^T| is tight and doubles as f's Lipschitz bound.
void attach_quadratic_composition(CompositeProblem& p, Matrix e, Vector t0);

}  // namespace proxcert
