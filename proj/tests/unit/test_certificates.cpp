#include "proxcert/certificates.hpp"
#include "proxcert/errors.hpp"
#include "proxcert/instances.hpp"
#include "proxcert/io.hpp"
#include "proxcert/problem.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace proxcert;
using proxcert::testing::mat;
using proxcert::testing::same_bits;
using proxcert::testing::scalar_quadratic;
using proxcert::testing::vec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("property and variant names round-trip") {
  for (PropertyKind k : {PropertyKind::rsc, PropertyKind::geb, PropertyKind::qg})
    REQUIRE(property_from_string(to_string(k)) == k);
  for (Variant v : {Variant::original, Variant::modified, Variant::extended})
    REQUIRE(variant_from_string(to_string(v)) == v);
  REQUIRE_THROWS_AS(property_from_string("curvature"), InputError);
  REQUIRE_THROWS_AS(variant_from_string(""), InputError);
}

TEST_CASE("constants implied by quadratic growth") {
  ChainConstants c = chain_from_qg(2.0);
  REQUIRE(c.rsc == 1.0);
  REQUIRE(c.geb == 1.0);
  REQUIRE(c.qg == 0.5);
  REQUIRE_THROWS_AS(chain_from_qg(0.0), InputError);
  REQUIRE_THROWS_AS(chain_from_qg(-1.0), InputError);
}

TEST_CASE("constants implied through the mapping-based chain") {
  ExtendedChainConstants a = chain_from_extended_qg(1.0, 1.0, 1.0);
  REQUIRE_THAT(a.geb, WithinRel(1.0 / 6.0, 1e-15));
  REQUIRE_THAT(a.rsc, WithinRel(1.0 / 36.0, 1e-15));
  REQUIRE(a.forward_all == 1.0);

  ExtendedChainConstants b = chain_from_extended_qg(2.0, 2.0, 2.0);
  REQUIRE_THAT(b.geb, WithinRel(1.0 / 3.0, 1e-15));
  REQUIRE_THAT(b.rsc, WithinRel(1.0 / 18.0, 1e-15));

  // The derived constants always sit strictly inside the starting one.
  for (double tau2 : {0.1, 1.0, 5.0})
    for (double gamma : {1.0, 2.0, 10.0})
      for (double lip : {0.5, 1.0}) {
        if (lip > gamma) continue;
        ExtendedChainConstants e = chain_from_extended_qg(tau2, gamma, lip);
        INFO("tau2 " << tau2 << " gamma " << gamma << " L " << lip);
        REQUIRE(e.geb > 0.0);
        REQUIRE(e.geb <= tau2 / 2.0);
        REQUIRE(e.rsc > 0.0);
        REQUIRE(e.rsc < e.geb);
      }

  REQUIRE_THROWS_AS(chain_from_extended_qg(1.0, 0.5, 1.0), InputError);
  REQUIRE_THROWS_AS(chain_from_extended_qg(0.0, 1.0, 1.0), InputError);
}

TEST_CASE("sampling is deterministic and extendable") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  auto a = sample_points(p, 200, 17, Variant::original, kInf);
  auto b = sample_points(p, 200, 17, Variant::original, kInf);
  auto longer = sample_points(p, 400, 17, Variant::original, kInf);
  REQUIRE(a.size() == 200);
  REQUIRE(longer.size() == 400);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(same_bits(a[i], b[i]));
    REQUIRE(same_bits(a[i], longer[i]));
  }
  for (const Vector& y : a)
    REQUIRE(distance_to_solution_set(p, y).dist >= 1e-8);
}

TEST_CASE("sampling respects the feasible set and the sublevel set") {
  CompositeProblem box = make_instance("box_ls", 5);
  for (const Vector& y : sample_points(box, 100, 3, Variant::modified, kInf))
    REQUIRE(box.polyhedron()->contains(y));

  CompositeProblem p = make_instance("quad1d", 0);
  const double omega = 2.0;
  for (const Vector& y : sample_points(p, 100, 3, Variant::extended, omega))
    REQUIRE(p.objective(y) <= p.phi_star + omega + slack_for(omega));

  // A sublevel set this thin sits entirely below the distance floor.
  REQUIRE_THROWS_AS(sample_points(p, 10, 3, Variant::extended, 1e-20),
                    SamplingError);
}

TEST_CASE("measured constants of the rank-deficient fit") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  PropertyEstimate qg =
      estimate_constant(p, PropertyKind::qg, Variant::original, 2.0, kInf, 2000, 5);
  PropertyEstimate geb =
      estimate_constant(p, PropertyKind::geb, Variant::original, 2.0, kInf, 2000, 5);
  PropertyEstimate rsc =
      estimate_constant(p, PropertyKind::rsc, Variant::original, 2.0, kInf, 2000, 5);
  REQUIRE_THAT(qg.constant, WithinAbs(2.0, 1e-6));
  REQUIRE_THAT(geb.constant, WithinAbs(2.0, 1e-6));
  REQUIRE_THAT(rsc.constant, WithinAbs(2.0, 1e-6));
  REQUIRE(qg.upper_bound);
  REQUIRE(qg.samples == 2000);

  // The witness reproduces its recorded ratio.
  DistanceResult d = distance_to_solution_set(p, qg.witness);
  const double replay = 2.0 * (p.objective(qg.witness) - p.phi_star) / (d.dist * d.dist);
  REQUIRE_THAT(replay, WithinRel(qg.witness_ratio, 1e-12));
  REQUIRE(qg.constant == qg.witness_ratio);
}

TEST_CASE("measured growth of the scalar quadratic") {
  CompositeProblem p = make_instance("quad1d", 0);
  PropertyEstimate qg =
      estimate_constant(p, PropertyKind::qg, Variant::original, 1.0, kInf, 500, 1);
  REQUIRE_THAT(qg.constant, WithinAbs(1.0, 1e-12));
}

TEST_CASE("a longer sample run can only lower the estimate") {
  CompositeProblem p = make_instance("box_ls", 5);
  PropertyEstimate small = estimate_constant(p, PropertyKind::qg, Variant::modified,
                                             p.gamma_auto(), kInf, 300, 21);
  PropertyEstimate big = estimate_constant(p, PropertyKind::qg, Variant::modified,
                                           p.gamma_auto(), kInf, 600, 21);
  REQUIRE(big.constant <= small.constant);
  REQUIRE(estimate_to_json(small) ==
          estimate_to_json(estimate_constant(p, PropertyKind::qg, Variant::modified,
                                             p.gamma_auto(), kInf, 300, 21)));
}

TEST_CASE("estimator input checks") {
  CompositeProblem p = make_instance("quad1d", 0);
  REQUIRE_THROWS_AS(estimate_constant(p, PropertyKind::qg, Variant::original, 1.0,
                                      kInf, 0, 1),
                    InputError);
  REQUIRE_THROWS_AS(estimate_constant(p, PropertyKind::qg, Variant::extended, 1.0,
                                      -1.0, 10, 1),
                    InputError);
  REQUIRE_THROWS_AS(estimate_constant(p, PropertyKind::rsc, Variant::extended, 0.0,
                                      kInf, 10, 1),
                    InputError);
}

TEST_CASE("chain audit on a clean instance and on a corrupted optimum") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  Report ok = verify_chain(p, 2.0, kInf, 500, 2);
  REQUIRE(ok.passed());
  REQUIRE(ok.metrics.at("qg_hat") > 0.0);
  REQUIRE(ok.metrics.at("rsc_hat") >=
          ok.metrics.at("implied_rsc") - 1e-6 * (1.0 + ok.metrics.at("implied_rsc")));
  REQUIRE(ok.metrics.at("geb_hat") >=
          ok.metrics.at("implied_geb") - 1e-6 * (1.0 + ok.metrics.at("implied_geb")));

  CompositeProblem corrupted = p;
  corrupted.phi_star += 0.1;
  Report bad = verify_chain(corrupted, 2.0, kInf, 500, 2);
  REQUIRE_FALSE(bad.passed());
  REQUIRE_FALSE(bad.violations.empty());
}

TEST_CASE("error-bound ratio of a half-line system") {
  // {x = 1} cut with {x >= 0}: every feasible sample sits where residual and
  // distance coincide.
  HoffmanEstimate h = hoffman_estimate(mat(1, 1, {1.0}), mat(1, 1, {-1.0}),
                                       vec({0.0}), vec({1.0}), 200, 4);
  REQUIRE_THAT(h.theta, WithinRel(1.0, 1e-12));
}

TEST_CASE("error-bound ratio of the rank-deficient line") {
  Matrix none(0, 2);
  Vector noneb(0);
  HoffmanEstimate h =
      hoffman_estimate(mat(1, 2, {1.0, 1.0}), none, noneb, vec({1.0}), 200, 4);
  REQUIRE_THAT(h.theta, WithinRel(2.0, 1e-9));
}

TEST_CASE("error-bound estimation is reproducible and replayable") {
  Matrix e = mat(2, 4, {1.0, 0.5, 0.0, -1.0,
                        0.0, 2.0, 1.0, 0.5});
  Matrix a = mat(1, 4, {1.0, 0.0, 0.0, 0.0});
  Vector b = vec({10.0});
  Vector x_hat = vec({1.0, 0.0, 0.0, 0.0});
  Vector t_star = e * x_hat;
  HoffmanEstimate h1 = hoffman_estimate(e, a, b, t_star, 300, 11);
  HoffmanEstimate h2 = hoffman_estimate(e, a, b, t_star, 300, 11);
  REQUIRE(h1.theta > 0.0);
  REQUIRE(h1.theta == h2.theta);
  REQUIRE(same_bits(h1.witness, h2.witness));
  REQUIRE(h1.theta == h1.witness_ratio);
}

TEST_CASE("an inconsistent system is a model error") {
  REQUIRE_THROWS_AS(hoffman_estimate(mat(1, 1, {1.0}), mat(1, 1, {1.0}),
                                     vec({0.0}), vec({2.0}), 10, 1),
                    ModelError);
}

TEST_CASE("composition audit with a known error-bound constant") {
  CompositeProblem p = make_instance("rankdef_ls", 0);
  Report rep = verify_case_study(p, 2.0, 400, 6);
  REQUIRE(rep.passed());
  REQUIRE(rep.metrics.at("theta") == 2.0);
  REQUIRE_THAT(rep.metrics.at("c1"), WithinRel(1.0, 1e-12));
  REQUIRE_THAT(rep.metrics.at("c2"), WithinRel(1.0, 1e-12));
  REQUIRE_THAT(rep.metrics.at("c3"), WithinRel(0.5, 1e-12));
}

TEST_CASE("composition audit with a fitted error-bound constant") {
  CompositeProblem p = make_instance("case_study", 3);
  Report rep = verify_case_study(p, p.gamma_auto(), 400, 9);
  REQUIRE(rep.passed());
  REQUIRE(rep.metrics.at("theta") > 0.0);
}

TEST_CASE("composition audit argument checks") {
  CompositeProblem flat = scalar_quadratic(1.0, 1.0);
  flat.f.composition.reset();
  REQUIRE_THROWS_AS(verify_case_study(flat, 1.0, 10, 1), ModelError);
  CompositeProblem p = make_instance("rankdef_ls", 0);
  REQUIRE_THROWS_AS(verify_case_study(p, 1.0, 10, 1), InputError);
}
