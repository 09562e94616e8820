#include "proxcert/mappings.hpp"

#include "proxcert/errors.hpp"
#include "proxcert/projection.hpp"

#include <cmath>

namespace proxcert {

namespace {

Vector soft_threshold(const Vector& z, double width) {
  Vector out(z.size());
  for (int i = 0; i < z.size(); ++i) {
    const double mag = std::abs(z[i]) - width;
    out[i] = mag > 0.0 ? (z[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

// mapping first, then the forward point rebuilt from it, so that
// forward == base - mapping / gamma holds bitwise.
MappingResult assemble(const Vector& xbar, double gamma, Vector mapping) {
  MappingResult r;
  r.base = xbar;
  r.gamma = gamma;
  r.mapping = std::move(mapping);
  r.forward = xbar - r.mapping / gamma;
  r.mapping_norm = r.mapping.norm();
  return r;
}

void check_step(const Vector& xbar, double gamma, int dimension) {
  if (gamma <= 0.0) throw InputError("mapping: step scale must be positive");
  if (xbar.size() != dimension) throw InputError("mapping: dimension mismatch");
}

}  // namespace

Vector prox(const Regularizer& g, const Vector& z, double gamma) {
  if (gamma <= 0.0) throw InputError("prox: step scale must be positive");
  switch (g.kind) {
    case RegularizerKind::zero:
      return z;
    case RegularizerKind::l1:
      return soft_threshold(z, g.l1_weight / gamma);
    case RegularizerKind::indicator:
      if (!g.set.has_value()) throw ModelError("prox: indicator without a set");
      return project_polyhedron(*g.set, z);
  }
  throw InputError("prox: unknown regularizer kind");
}

MappingResult gradient_mapping(const SmoothTerm& f, const Polyhedron* q,
                               const Vector& xbar, double gamma) {
  check_step(xbar, gamma, f.dimension);
  Vector grad = f.gradient(xbar);
  if (q == nullptr || q->trivial()) return assemble(xbar, gamma, std::move(grad));
  Vector p = project_polyhedron(*q, xbar - grad / gamma);
  return assemble(xbar, gamma, gamma * (xbar - p));
}

MappingResult prox_gradient_mapping(const SmoothTerm& f, const Regularizer& g,
                                    const Vector& xbar, double gamma) {
  switch (g.kind) {
    case RegularizerKind::zero:
      return gradient_mapping(f, nullptr, xbar, gamma);
    case RegularizerKind::indicator:
      if (!g.set.has_value())
        throw ModelError("prox_gradient_mapping: indicator without a set");
      return gradient_mapping(f, &*g.set, xbar, gamma);
    case RegularizerKind::l1: {
      check_step(xbar, gamma, f.dimension);
      Vector p = prox(g, xbar - f.gradient(xbar) / gamma, gamma);
      return assemble(xbar, gamma, gamma * (xbar - p));
    }
  }
  throw InputError("prox_gradient_mapping: unknown regularizer kind");
}

double prox_descent_gap(const CompositeProblem& p, const Vector& x,
                        const Vector& xbar, double gamma) {
  if (gamma < p.f.lipschitz)
    throw InputError("prox_descent_gap: step scale below the smoothness bound");
  MappingResult m = prox_gradient_mapping(p.f, p.g, xbar, gamma);
  const double predicted =
      m.mapping.dot(x - xbar) + m.mapping.squaredNorm() / (2.0 * gamma);
  return p.objective(x) - p.objective(m.forward) - predicted;
}

double composition_growth_gap(const CompositeProblem& p, const Vector& x,
                              const Vector& xbar, double gamma) {
  if (!p.f.composition.has_value())
    throw ModelError("composition_growth_gap: no composition structure");
  const CompositionStructure& comp = *p.f.composition;
  if (gamma < comp.lipschitz_hat)
    throw InputError("composition_growth_gap: step scale below the certified bound");
  const Polyhedron* q = p.polyhedron();
  if (q != nullptr && !q->contains(x))
    throw InputError("composition_growth_gap: point outside the feasible set");
  MappingResult m = gradient_mapping(p.f, q, xbar, gamma);
  const double predicted = p.f.value(m.forward) + m.mapping.dot(x - xbar) +
                           m.mapping.squaredNorm() / (2.0 * gamma) +
                           0.5 * comp.mu * (comp.E * (x - xbar)).squaredNorm();
  return p.f.value(x) - predicted;
}

double natural_residual(const SmoothTerm& f, const Polyhedron* q, const Vector& y) {
  if (y.size() != f.dimension)
    throw InputError("natural_residual: dimension mismatch");
  Vector grad = f.gradient(y);
  if (q == nullptr || q->trivial()) return grad.norm();
  return (y - project_polyhedron(*q, y - grad)).norm();
}

}  // namespace proxcert
