#include "proxcert/errors.hpp"
#include "proxcert/instances.hpp"
#include "proxcert/mappings.hpp"
#include "proxcert/projection.hpp"
#include "proxcert/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace proxcert;
using proxcert::testing::mat;
using proxcert::testing::vec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// A feasible point of the problem's domain near y.
Vector domain_point(const CompositeProblem& p, const Vector& y) {
  const Polyhedron* q = p.polyhedron();
  return q != nullptr && !q->trivial() ? project_polyhedron(*q, y) : y;
}

}  // namespace

TEST_CASE("prox of the zero regularizer is the identity") {
  Regularizer g;
  Vector z = vec({1.0, -2.0});
  REQUIRE(testing::same_bits(prox(g, z, 3.0), z));
}

TEST_CASE("prox of l1 soft-thresholds at weight over gamma") {
  Regularizer g;
  g.kind = RegularizerKind::l1;
  g.l1_weight = 1.0;
  REQUIRE(prox(g, vec({3.0}), 1.0)[0] == 2.0);
  REQUIRE(prox(g, vec({0.5}), 1.0)[0] == 0.0);
  REQUIRE(prox(g, vec({-3.0}), 1.0)[0] == -2.0);
  REQUIRE(prox(g, vec({3.0}), 2.0)[0] == 2.5);
}

TEST_CASE("prox rejects nonpositive gamma") {
  Regularizer g;
  REQUIRE_THROWS_AS(prox(g, vec({1.0}), 0.0), InputError);
}

TEST_CASE("prox is nonexpansive") {
  Regularizer g;
  g.kind = RegularizerKind::l1;
  g.l1_weight = 0.7;
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Vector z1 = rng.gaussian(4) * 3.0;
    Vector z2 = rng.gaussian(4) * 3.0;
    const double gamma = 0.5 + 2.0 * rng.uniform01();
    REQUIRE((prox(g, z1, gamma) - prox(g, z2, gamma)).norm() <=
            (z1 - z2).norm() + 1e-12);
  }
}

TEST_CASE("whole-space mapping equals the gradient exactly") {
  CompositeProblem p = make_instance("quad1d", 0);
  MappingResult m = gradient_mapping(p.f, nullptr, vec({2.0}), 1.0);
  REQUIRE(m.mapping[0] == 2.0);
  REQUIRE(m.forward[0] == 0.0);
  REQUIRE(m.mapping_norm == 2.0);

  // Any gamma: the mapping is still exactly grad f.
  MappingResult m3 = gradient_mapping(p.f, nullptr, vec({2.0}), 3.0);
  REQUIRE(m3.mapping[0] == 2.0);
}

TEST_CASE("mapping vanishes at a vertex whose step leaves the box") {
  // Objective pulls toward (2,2); the box corner (1,1) absorbs the step, so
  // the projected step returns the base point and the mapping is zero.
  SmoothTerm f;
  f.dimension = 2;
  Vector target = vec({2.0, 2.0});
  f.value = [target](const Vector& x) { return 0.5 * (x - target).squaredNorm(); };
  f.gradient = [target](const Vector& x) { return Vector(x - target); };
  f.lipschitz = 1.0;
  Polyhedron box;
  box.A = mat(4, 2, {1, 0, 0, 1, -1, 0, 0, -1});
  box.b = vec({1, 1, 0, 0});
  MappingResult m = gradient_mapping(f, &box, vec({1.0, 1.0}), 1.0);
  REQUIRE(m.mapping.norm() == 0.0);
  REQUIRE(testing::same_bits(m.forward, vec({1.0, 1.0})));
}

TEST_CASE("forward point reconstructs from the mapping bitwise") {
  Rng rng(9);
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 4);
    const double gamma = p.gamma_auto() * 1.37;
    for (int trial = 0; trial < 20; ++trial) {
      Vector x = rng.gaussian(p.dimension()) * 2.0;
      MappingResult m = prox_gradient_mapping(p.f, p.g, x, gamma);
      Vector rebuilt = m.base - m.mapping / m.gamma;
      INFO(family << " trial " << trial);
      REQUIRE(testing::same_bits(rebuilt, m.forward));
      REQUIRE(m.mapping_norm == m.mapping.norm());
    }
  }
}

TEST_CASE("indicator prox step reduces to the projected-gradient step") {
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 6);
    if (p.g.kind != RegularizerKind::indicator) continue;
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      Vector x = rng.gaussian(p.dimension()) * 3.0;
      MappingResult a = prox_gradient_mapping(p.f, p.g, x, p.gamma_auto());
      MappingResult b = gradient_mapping(p.f, p.polyhedron(), x, p.gamma_auto());
      REQUIRE((a.mapping - b.mapping).lpNorm<Eigen::Infinity>() <= 1e-12);
      REQUIRE((a.forward - b.forward).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("zero-regularizer prox step reduces to the gradient") {
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 6);
    if (p.g.kind != RegularizerKind::zero) continue;
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
      Vector x = rng.gaussian(p.dimension()) * 3.0;
      MappingResult a = prox_gradient_mapping(p.f, p.g, x, p.gamma_auto());
      REQUIRE(testing::same_bits(a.mapping, p.f.gradient(x)));
    }
  }
}

TEST_CASE("proximal descent gap on the scalar quadratic") {
  CompositeProblem p = make_instance("quad1d", 0);
  const double gap = prox_descent_gap(p, vec({0.0}), vec({2.0}), 1.0);
  REQUIRE_THAT(gap, WithinAbs(2.0, 1e-14));
}

TEST_CASE("proximal descent gap requires gamma at least L") {
  CompositeProblem p = make_instance("quad1d", 0);
  REQUIRE_THROWS_AS(prox_descent_gap(p, vec({0.0}), vec({2.0}), 0.5), InputError);
}

TEST_CASE("proximal descent gap is nonnegative on sampled pairs") {
  Rng rng(17);
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 8);
    for (double scale : {1.0, 2.0}) {
      const double gamma = p.gamma_auto() * scale;
      for (int trial = 0; trial < 100; ++trial) {
        Vector xbar = rng.gaussian(p.dimension()) * 2.0;
        Vector x = domain_point(p, rng.gaussian(p.dimension()) * 2.0);
        const double gap = prox_descent_gap(p, x, xbar, gamma);
        INFO(family << " scale " << scale << " trial " << trial);
        REQUIRE(gap >= -1e-9 * (1.0 + std::abs(gap)));
      }
    }
  }
}

TEST_CASE("descent consequence at the base point") {
  Rng rng(19);
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 2);
    const double gamma = p.gamma_auto();
    for (int trial = 0; trial < 50; ++trial) {
      Vector xbar = domain_point(p, rng.gaussian(p.dimension()) * 2.0);
      MappingResult m = prox_gradient_mapping(p.f, p.g, xbar, gamma);
      const double drop = p.objective(xbar) - p.objective(m.forward);
      const double need = 0.5 * gamma * (xbar - m.forward).squaredNorm();
      REQUIRE(drop >= need - slack_for(need));
    }
  }
}

TEST_CASE("composition growth gap on the rank-deficient line fit") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  const double gap = composition_growth_gap(p, vec({1.0, 0.0}), vec({2.0, 1.0}), 2.0);
  REQUIRE_THAT(gap, WithinAbs(0.0, 1e-12));
}

TEST_CASE("composition growth gap preconditions") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  REQUIRE_THROWS_AS(
      composition_growth_gap(p, vec({1.0, 0.0}), vec({2.0, 1.0}), 1.0), InputError);

  CompositeProblem bare = testing::scalar_quadratic(1.0, 1.0);
  REQUIRE_THROWS_AS(composition_growth_gap(bare, vec({0.0}), vec({1.0}), 1.0),
                    ModelError);
}

TEST_CASE("composition growth gap is nonnegative on sampled pairs") {
  Rng rng(23);
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 12);
    if (!p.f.composition.has_value()) continue;
    const double gamma = p.f.composition->lipschitz_hat;
    for (int trial = 0; trial < 100; ++trial) {
      Vector xbar = rng.gaussian(p.dimension()) * 2.0;
      Vector x = domain_point(p, rng.gaussian(p.dimension()) * 2.0);
      const double gap = composition_growth_gap(p, x, xbar, gamma);
      INFO(family << " trial " << trial);
      REQUIRE(gap >= -1e-9 * (1.0 + std::abs(gap)));
    }
  }
}

TEST_CASE("natural residual vanishes at a constrained minimizer") {
  // (1/2) x^2 over x >= 1: the minimizer sits at the boundary point 1.
  CompositeProblem p = make_instance("quad1d", 0);
  Polyhedron q;
  q.A = mat(1, 1, {-1.0});
  q.b = vec({-1.0});
  REQUIRE(natural_residual(p.f, &q, vec({1.0})) == 0.0);
  // Whole space: the residual is the gradient norm.
  REQUIRE(natural_residual(p.f, nullptr, vec({3.0})) == 3.0);
}
