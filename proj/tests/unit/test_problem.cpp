#include "proxcert/errors.hpp"
#include "proxcert/instances.hpp"
#include "proxcert/problem.hpp"
#include "proxcert/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace proxcert;
using proxcert::testing::vec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("distance to a singleton set") {
  CompositeProblem p = make_instance("quad1d", 0);
  DistanceResult d = distance_to_solution_set(p, vec({3.0}));
  REQUIRE(d.dist == 3.0);
  REQUIRE(d.projection[0] == 0.0);
  REQUIRE_FALSE(d.upper_bound);
}

TEST_CASE("distance to an affine slice") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  DistanceResult d = distance_to_solution_set(p, vec({2.0, 1.0}));
  REQUIRE_THAT(d.dist, WithinRel(1.4142135623730951, 1e-14));
  REQUIRE_THAT(d.projection[0], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(d.projection[1], WithinAbs(0.0, 1e-12));
  REQUIRE_FALSE(d.upper_bound);
}

TEST_CASE("proxy distances are flagged as upper bounds") {
  CompositeProblem p = make_instance("lasso", 7);
  Vector y = Vector::Ones(p.dimension());
  DistanceResult d = distance_to_solution_set(p, y);
  REQUIRE(d.upper_bound);
  // The reported distance is attained by the reported point.
  REQUIRE_THAT(d.dist, WithinRel((y - d.projection).norm(), 1e-12));
}

TEST_CASE("distance projections attain the optimal value") {
  Rng rng(5);
  for (const auto& family : instance_families()) {
    CompositeProblem p = make_instance(family, 3);
    for (int trial = 0; trial < 20; ++trial) {
      Vector y = rng.gaussian(p.dimension()) * 5.0;
      DistanceResult d = distance_to_solution_set(p, y);
      INFO(family << " trial " << trial);
      REQUIRE(d.dist >= 0.0);
      REQUIRE_THAT((y - d.projection).norm(), WithinAbs(d.dist, 1e-9));
      REQUIRE(p.objective(d.projection) <= p.phi_star + 1e-9);
      // Projecting the projection moves it by at most round-off.
      DistanceResult dd = distance_to_solution_set(p, d.projection);
      REQUIRE(dd.dist <= 1e-9 * (1.0 + d.dist));
    }
  }
}

TEST_CASE("polyhedron membership uses scaled slack") {
  Polyhedron q;
  q.A = testing::mat(1, 1, {1.0});
  q.b = vec({1.0});
  REQUIRE(q.contains(vec({1.0})));
  REQUIRE(q.contains(vec({1.0 + 1e-10})));
  REQUIRE_FALSE(q.contains(vec({1.1})));
}

TEST_CASE("regularizer evaluation") {
  Regularizer zero;
  REQUIRE(zero.value(vec({5.0})) == 0.0);

  Regularizer l1;
  l1.kind = RegularizerKind::l1;
  l1.l1_weight = 2.0;
  REQUIRE(l1.value(vec({-3.0, 4.0})) == 14.0);

  Regularizer ind;
  ind.kind = RegularizerKind::indicator;
  Polyhedron q;
  q.A = testing::mat(1, 1, {1.0});
  q.b = vec({0.0});
  ind.set = q;
  REQUIRE(ind.value(vec({-1.0})) == 0.0);
  REQUIRE(std::isinf(ind.value(vec({1.0}))));
}

TEST_CASE("auto step scale prefers the composition constant") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  REQUIRE(p.f.composition.has_value());
  REQUIRE(p.gamma_auto() == p.f.composition->lipschitz_hat);
  REQUIRE_THAT(p.gamma_auto(), WithinRel(2.0, 1e-14));
}
