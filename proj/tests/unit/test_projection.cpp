#include "proxcert/errors.hpp"
#include "proxcert/projection.hpp"
#include "proxcert/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace proxcert;
using proxcert::testing::mat;
using proxcert::testing::vec;
using Catch::Matchers::WithinAbs;

namespace {

// Unit box [0,1]^2 as row constraints x_i <= 1, -x_i <= 0.
Polyhedron unit_box2() {
  Polyhedron q;
  q.A = mat(4, 2, {1, 0, 0, 1, -1, 0, 0, -1});
  q.b = vec({1, 1, 0, 0});
  q.feasible_point = vec({0.5, 0.5});
  return q;
}

}  // namespace

TEST_CASE("projection onto a box clamps componentwise") {
  Polyhedron q = unit_box2();
  Vector p = project_polyhedron(q, vec({1.5, -0.3}));
  REQUIRE(p[0] == 1.0);
  REQUIRE(p[1] == 0.0);
  // A corner with two active rows.
  Vector c = project_polyhedron(q, vec({2.0, 2.0}));
  REQUIRE(c[0] == 1.0);
  REQUIRE(c[1] == 1.0);
  // Interior points are fixed.
  Vector in = project_polyhedron(q, vec({0.25, 0.75}));
  REQUIRE(in[0] == 0.25);
  REQUIRE(in[1] == 0.75);
}

TEST_CASE("projection onto a halfspace") {
  Polyhedron q;
  q.A = mat(1, 2, {1, 1});
  q.b = vec({1});
  Vector p = project_polyhedron(q, vec({1.0, 1.0}));
  REQUIRE_THAT(p[0], WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(p[1], WithinAbs(0.5, 1e-14));
}

TEST_CASE("trivial polyhedron projects to the identity") {
  Polyhedron q;
  q.A = Matrix(0, 3);
  q.b = Vector(0);
  Vector y = vec({1.0, -2.0, 0.5});
  REQUIRE(proxcert::testing::same_bits(project_polyhedron(q, y), y));
}

TEST_CASE("general projections satisfy first-order optimality") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4;
    const int k = 6;
    Matrix a(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    Vector center = rng.gaussian(n);
    Vector b(k);
    // Constraints with positive margin at `center`, so the set is nonempty.
    for (int i = 0; i < k; ++i) b[i] = a.row(i).dot(center) + 0.1 + rng.uniform01();
    Polyhedron q{a, b, center};

    Vector y = rng.gaussian(n) * 3.0;
    ProjectionResult r = project_polyhedron_full(q, y);
    INFO("trial " << trial << " iterations " << r.iterations);
    REQUIRE(r.kkt_residual <= 1e-10);
    REQUIRE(q.contains(r.point));
    // Idempotence: projecting a projected point is a fixed point.
    Vector again = project_polyhedron(q, r.point);
    REQUIRE((again - r.point).norm() <= 1e-9);
    // Variational inequality: <y - p, z - p> <= 0 for feasible z.
    for (int s = 0; s < 10; ++s) {
      Vector z = project_polyhedron(q, rng.gaussian(n) * 3.0);
      REQUIRE((y - r.point).dot(z - r.point) <= 1e-8);
    }
  }
}

TEST_CASE("active-set agrees with the box closed form") {
  Rng rng(21);
  const int n = 5;
  for (int trial = 0; trial < 30; ++trial) {
    Vector lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = -rng.uniform01() - 0.2;
      hi[i] = rng.uniform01() + 0.2;
    }
    // Same box written as general rows, scaled to defeat the box detector's
    // normalization assumptions.
    Matrix a(2 * n, n);
    a.setZero();
    Vector b(2 * n);
    for (int i = 0; i < n; ++i) {
      a(i, i) = 2.0;
      b[i] = 2.0 * hi[i];
      a(n + i, i) = -3.0;
      b[n + i] = -3.0 * lo[i];
    }
    Vector y = rng.gaussian(n) * 2.0;
    Vector p = project_polyhedron(Polyhedron{a, b, Vector::Zero(n)}, y);
    for (int i = 0; i < n; ++i) {
      const double clamped = std::min(hi[i], std::max(lo[i], y[i]));
      REQUIRE_THAT(p[i], WithinAbs(clamped, 1e-10));
    }
  }
}

TEST_CASE("projection onto an affine-polyhedral intersection") {
  // {x : x1 + x2 = 1} with no inequalities: least-squares correction.
  Matrix e = mat(1, 2, {1, 1});
  Vector t = vec({1});
  ProjectionResult r =
      project_onto_constraints(vec({2.0, 1.0}), Matrix(0, 2), Vector(0), e, t);
  REQUIRE_THAT(r.point[0], WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(r.point[1], WithinAbs(0.0, 1e-12));

  // Adding x1 <= 0.25 moves the projection along the line.
  Matrix a = mat(1, 2, {1, 0});
  Vector b = vec({0.25});
  ProjectionResult rc = project_onto_constraints(vec({2.0, 1.0}), a, b, e, t);
  REQUIRE_THAT(rc.point[0], WithinAbs(0.25, 1e-10));
  REQUIRE_THAT(rc.point[1], WithinAbs(0.75, 1e-10));
  REQUIRE(rc.kkt_residual <= 1e-10);
}

TEST_CASE("a violated feasibility certificate is a model error") {
  Polyhedron q;
  q.A = mat(2, 1, {1, -1});
  q.b = vec({0, -1});  // x <= 0 and x >= 1: empty
  q.feasible_point = vec({0.0});
  REQUIRE_THROWS_AS(project_polyhedron(q, vec({0.5})), ModelError);
}

TEST_CASE("an infeasible system without a certificate fails numerically") {
  Polyhedron q;
  q.A = mat(2, 1, {1, -1});
  q.b = vec({0, -1});
  REQUIRE_THROWS_AS(project_polyhedron(q, vec({0.5})), NumericalError);
}
