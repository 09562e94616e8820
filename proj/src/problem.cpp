#include "proxcert/problem.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/linalg.hpp"
#include "proxcert/projection.hpp"

#include <cmath>

namespace proxcert {

bool Polyhedron::contains(const Vector& x) const {
  if (x.size() != cols() && !trivial())
    throw InputError("Polyhedron::contains: dimension mismatch");
  for (int i = 0; i < rows(); ++i)
    if (A.row(i).dot(x) > b[i] + slack_for(b[i])) return false;
  return true;
}

double Polyhedron::max_violation(const Vector& x) const {
  double worst = 0.0;
  for (int i = 0; i < rows(); ++i)
    worst = std::max(worst, A.row(i).dot(x) - b[i]);
  return worst;
}

double Regularizer::value(const Vector& x) const {
  switch (kind) {
    case RegularizerKind::zero:
      return 0.0;
    case RegularizerKind::l1:
      return l1_weight * x.lpNorm<1>();
    case RegularizerKind::indicator:
      if (!set.has_value())
        throw ModelError("Regularizer::value: indicator without a set");
      return set->contains(x) ? 0.0 : kInf;
  }
  throw InputError("Regularizer::value: unknown kind");
}

const Vector& SolutionSetModel::anchor() const {
  switch (variant) {
    case Variant::singleton:
      return point;
    case Variant::affine_slice:
      return representative;
    case Variant::proxy:
      if (proxy_points.empty())
        throw ModelError("SolutionSetModel::anchor: empty proxy set");
      return proxy_points.front();
  }
  throw ModelError("SolutionSetModel::anchor: unknown variant");
}

std::vector<Vector> SolutionSetModel::stored_points() const {
  switch (variant) {
    case Variant::singleton:
      return {point};
    case Variant::affine_slice:
      return {representative};
    case Variant::proxy:
      return proxy_points;
  }
  throw ModelError("SolutionSetModel::stored_points: unknown variant");
}

const Polyhedron* CompositeProblem::polyhedron() const {
  if (g.kind == RegularizerKind::indicator && g.set.has_value()) return &*g.set;
  return nullptr;
}

double CompositeProblem::gamma_auto() const {
  return f.composition.has_value() ? f.composition->lipschitz_hat : f.lipschitz;
}

void attach_quadratic_composition(CompositeProblem& p, Matrix e, Vector t0) {
  if (e.rows() == 0 || e.cols() == 0)
    throw InputError("attach_quadratic_composition: empty matrix");
  if (e.rows() != t0.size())
    throw InputError("attach_quadratic_composition: shift size mismatch");
  p.f.dimension = static_cast<int>(e.cols());
  p.f.value = [e, t0](const Vector& x) { return 0.5 * (e * x - t0).squaredNorm(); };
  p.f.gradient = [e, t0](const Vector& x) { return Vector(e.transpose() * (e * x - t0)); };

  CompositionStructure comp;
  comp.inner_value = [t0](const Vector& t) { return 0.5 * (t - t0).squaredNorm(); };
  comp.inner_gradient = [t0](const Vector& t) { return Vector(t - t0); };
  comp.mu = 1.0;
  comp.inner_lipschitz = 1.0;
  comp.lipschitz_hat = spectral_norm(Matrix(e * e.transpose()));
  comp.E = std::move(e);
  comp.t0 = std::move(t0);
  p.f.lipschitz = comp.lipschitz_hat;
  p.f.composition = std::move(comp);
}

DistanceResult distance_to_solution_set(const CompositeProblem& p, const Vector& y) {
  if (y.size() != p.dimension())
    throw InputError("distance_to_solution_set: dimension mismatch");
  DistanceResult r;
  const SolutionSetModel& s = p.solution_set;
  switch (s.variant) {
    case SolutionSetModel::Variant::singleton:
      r.projection = s.point;
      break;
    case SolutionSetModel::Variant::affine_slice: {
      if (s.with_polyhedron) {
        const Polyhedron* q = p.polyhedron();
        if (q == nullptr)
          throw ModelError("distance_to_solution_set: slice expects a polyhedron");
        r.projection = project_onto_constraints(y, q->A, q->b, s.E, s.t_star,
                                                &s.representative)
                           .point;
      } else {
        r.projection = y - min_norm_solve(s.E, s.E * y - s.t_star);
      }
      break;
    }
    case SolutionSetModel::Variant::proxy: {
      if (s.proxy_points.empty())
        throw ModelError("distance_to_solution_set: empty proxy set");
      double best = kInf;
      for (const Vector& q : s.proxy_points) {
        const double d = (y - q).norm();
        if (d < best) {
          best = d;
          r.projection = q;
        }
      }
      r.upper_bound = true;
      break;
    }
  }
  r.dist = (y - r.projection).norm();
  return r;
}

}  // namespace proxcert
