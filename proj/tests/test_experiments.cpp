#include <doctest.h>

#include <atomic>

#include "cornerlab/experiments.hpp"

using namespace cornerlab;

namespace {

MediumConfig admissible_square(Vec2 shift = {}) {
  MediumConfig c;
  c.vertices = square_vertices(1.0, shift);
  c.corners = {CornerSpec{0.5, 2.5, 0.0, 0.5}};
  c.a_bulk = 0.2;
  return c;
}

}  // namespace

TEST_CASE("report verdict ignores unasserted rows") {
  Report r{"x", {}, 0.0};
  r.add({"a", "", 1.0, 2.0, true, true, ""});
  r.add({"b", "", 5.0, 2.0, false, false, ""});
  CHECK(r.all_pass());
  r.add({"c", "", 5.0, 2.0, false, true, ""});
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("parallel runner covers every index once") {
  std::vector<std::atomic<int>> hits(57);
  run_parallel(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(run_parallel(10, 3, [](std::size_t i) {
                    if (i == 7) fail(ErrorKind::InvalidArgument, "boom");
                  }),
                  Error);
}

TEST_CASE("vanishing order estimator") {
  for (double p : {0.5, 1.5, 2.5})
    CHECK(estimate_vanishing_order([p](double r) { return std::pow(r, p); }, 1e-3, 3e-2) ==
          doctest::Approx(p).epsilon(0.05 / p));
  CHECK(std::isinf(estimate_vanishing_order([](double) { return 0.0; }, 1e-3, 3e-2)));
}

TEST_CASE("admissibility") {
  CHECK(admissibility_check(assemble_medium(admissible_square())).admissible());

  MediumConfig jump = admissible_square();
  jump.corners = {CornerSpec{0.5, 0.0, 0.3, 0.5}};
  const AdmissibilityReport j = admissibility_check(assemble_medium(jump));
  CHECK_FALSE(j.admissible());
  CHECK_FALSE(j.corners[0].a_ok);
  CHECK(j.corners[0].a_slope < 0.5);

  MediumConfig no_rho = admissible_square();
  no_rho.corners = {CornerSpec{0.0, 2.5, 0.0, 0.5}};
  const AdmissibilityReport n = admissibility_check(assemble_medium(no_rho));
  CHECK_FALSE(n.admissible());
  CHECK_FALSE(n.corners[0].rho_ok);
}

TEST_CASE("corner certification rules") {
  const Sector right = Sector::make({0, 0}, 0.0, pi / 2, 0.2);
  const FieldExpansion plane = taylor_jet(PlaneWave{1.0, {1.0, 0.0}}, {0, 0}, 6);
  const FieldExpansion bessel = taylor_jet(BesselMode{1.0, 2, 1.0, {0, 0}}, {0, 0}, 6);
  CHECK(corner_certified({0.5, 2.5, 0.0, 0.5}, plane, right));
  CHECK(corner_certified({0.5, 2.5, 0.0, 0.5}, bessel, right));
  CHECK(corner_certified({0.5, 1.0, 0.0, 0.5}, plane, right));        // N0 = N
  CHECK_FALSE(corner_certified({0.5, 1.0, 0.0, 0.5}, bessel, right)); // N0 = N + 1
  CHECK(corner_certified({0.0, 0.0, 0.3, 0.5}, plane, right));
  CHECK_FALSE(corner_certified({0.0, 0.0, 0.3, 0.5}, bessel, right)); // exceptional aperture
  CHECK_FALSE(corner_certified({0.0, 2.5, 0.0, 0.5}, plane, right));  // no contrast at the vertex
}

TEST_CASE("sweep flags class E pairs and asserts the rest") {
  MediumConfig cond;
  cond.vertices = square_vertices(1.0);
  cond.corners = {CornerSpec{0.0, 0.0, 0.3, 0.5}};
  const std::vector<IncidentField> incidents{PlaneWave{1.0, {1.0, 0.0}}, BesselMode{1.0, 2, 1.0, {-0.5, -0.5}}};
  const SweepResult r = corner_scattering_sweep({{"cond", cond}}, incidents, {0.1, 0.05}, 32, 1e-10, 2);
  REQUIRE(r.rows.size() == 4);
  REQUIRE(r.verdicts.size() == 2);
  REQUIRE(r.control_norms.size() == 1);
  CHECK(r.control_norms[0] <= 1e-10);
  const auto sectors = corner_sectors(ConvexPolygon(cond.vertices), 0.25);
  for (const auto& row : r.rows) {
    CHECK(row.l2 >= 0);
    CHECK(row.sup >= 0);
    const IncidentField& f = row.incident == describe(incidents[0]) ? incidents[0] : incidents[1];
    bool expected = false;
    for (const auto& s : sectors) expected = expected || class_E_membership(f, s).has_value();
    CHECK(row.class_E == expected);
  }
  CHECK_FALSE(r.verdicts[0].class_E);
  CHECK(r.verdicts[0].asserted);
  CHECK(r.verdicts[0].pass);
  CHECK(r.verdicts[1].class_E);
  CHECK_FALSE(r.verdicts[1].asserted);
  CHECK(r.all_pass());

  const SweepResult serial = corner_scattering_sweep({{"cond", cond}}, incidents, {0.1, 0.05}, 32, 1e-10, 1);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(serial.rows[i].l2 == r.rows[i].l2);
}

TEST_CASE("hull uniqueness demo") {
  const MediumSpec a = assemble_medium(admissible_square());
  const UniquenessOutcome same = hull_uniqueness_demo(a, a, PlaneWave{2.0, {1.0, 0.0}}, 0.05, 32);
  CHECK_FALSE(same.hulls_differ);
  CHECK_FALSE(same.asserted);
  CHECK(same.discrepancy <= 1e-10);

  MediumConfig moved = admissible_square();
  moved.vertices[2] = moved.vertices[2] + 0.2 * unit_vector(pi / 4);
  const UniquenessOutcome diff =
      hull_uniqueness_demo(a, assemble_medium(moved), PlaneWave{2.0, {1.0, 0.0}}, 0.05, 32);
  CHECK(diff.hulls_differ);
  CHECK(diff.asserted);
  CHECK(diff.pass);
  CHECK(diff.discrepancy >= 10 * diff.self_convergence);

  MediumConfig bumped = admissible_square();
  bumped.c_bumps = {BumpSpec{{0.1, 0.0}, 0.2, 0.8}};
  const UniquenessOutcome coeff =
      hull_uniqueness_demo(a, assemble_medium(bumped), PlaneWave{2.0, {1.0, 0.0}}, 0.05, 32);
  CHECK_FALSE(coeff.asserted);
  CHECK(coeff.pass);
}

TEST_CASE("disc transmission eigenpair") {
  const EigenpairDisc e = disc_transmission_eigenpair(1.0, 4.0, 0.0, 5.0);
  CHECK(std::abs(e.determinant) <= 1e-8);
  CHECK(e.kappa > 0);
  CHECK(e.kappa < 5);
  CHECK(e.reconstruction_residual <= 1e-6);
  CHECK(disc_determinant(e.mode, e.kappa * (1 - 1e-6), 4.0, 1.0) * disc_determinant(e.mode, e.kappa * (1 + 1e-6), 4.0, 1.0) < 0);
  CHECK(e.v_trace.points.size() == 128);

  const EigenpairDisc m0 = disc_transmission_eigenpair(1.0, 4.0, 0.0, 5.0, 0);
  CHECK(m0.mode == 0);
  CHECK(m0.kappa < 5);
  CHECK(m0.kappa >= e.kappa);
  CHECK(std::abs(m0.determinant) <= 1e-8);

  try {
    disc_transmission_eigenpair(1.0, 1.0, 0.0, 5.0);
    FAIL("expected PreconditionViolated");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::PreconditionViolated);
  }
  try {
    disc_transmission_eigenpair(1.0, 4.0, 0.0, 0.5);
    FAIL("expected NoRootInInterval");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NoRootInInterval);
  }
}

TEST_CASE("Herglotz study bookkeeping") {
  const EigenpairDisc e = disc_transmission_eigenpair(1.0, 4.0, 0.0, 5.0);
  const auto rows = herglotz_blowup_study(e, {1e-2, 1e-4, 1e-6});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].misfit <= rows[i - 1].misfit);
    CHECK(rows[i].kernel_norm >= rows[i - 1].kernel_norm);
  }
}

TEST_CASE("classification") {
  const Sector right = Sector::make({0, 0}, 0.0, 1.5707963, 1.0);
  const Classification c = classify(BesselMode{1.0, 2, 1.0, {0, 0}}, right);
  CHECK(c.N0 == 2);
  CHECK(c.N == 1);
  CHECK(c.l == 1);
  CHECK_FALSE(classify(PlaneWave{1.0, {1, 0}}, right).l.has_value());
}

TEST_CASE("closed-form studies pass") {
  CHECK(ctilde_dichotomy_study(16).all_pass());
  CHECK(jet_structure_study(10, 11).all_pass());
}
