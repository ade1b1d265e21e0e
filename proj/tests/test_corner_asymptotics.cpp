#include <doctest.h>

#include "cornerlab/corner_asymptotics.hpp"

using namespace cornerlab;

namespace {

cplx plain_integral(const Sector& s, const EtaVector& eta) {
  return corner_integral(s, {0.0, [](double) { return cplx(1.0); }}, eta);
}

}  // namespace

TEST_CASE("phase vectors are isotropic") {
  for (int branch : {1, -1}) {
    const EtaVector eta = EtaVector::make(37.0, 0.8, branch);
    const CVec2 v = eta.vector();
    CHECK(std::abs(dot(v, v)) <= 1e-14 * 37 * 37);
    CHECK(std::hypot(v.x.real(), v.y.real()) == doctest::Approx(37.0));
    CHECK(std::hypot(v.x.imag(), v.y.imag()) == doctest::Approx(37.0));
  }
}

TEST_CASE("incomplete gamma oracle") {
  const auto exact = incomplete_gamma_check(1.0, 100.0, 1.0);
  CHECK(std::abs(exact.numeric - (1 - std::exp(-100.0)) / 100.0) < 1e-15);
  CHECK(std::abs(exact.closed_form - 0.01) < 1e-16);
  CHECK(exact.error == doctest::Approx(std::exp(-100.0) / 100.0).epsilon(1e-6));

  const auto two = incomplete_gamma_check(2.0, 50.0, 1.0);
  CHECK(std::abs(two.closed_form - 4e-4) < 1e-18);
  CHECK(two.error <= 10 * std::exp(-25.0));

  const auto half = incomplete_gamma_check(0.5, 50.0 * cplx(1, 1) / std::sqrt(2.0), 1.0);
  CHECK(half.error <= 10 * std::exp(-50.0 / std::sqrt(2.0) / 2));
  CHECK(half.pass);

  CHECK_THROWS_AS(incomplete_gamma_check(-1.0, 50.0, 1.0), Error);
}

TEST_CASE("plain corner integral against C1") {
  const Sector s = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  const EtaVector eta = EtaVector::make(100.0, pi / 4, 1);
  const cplx C1 = c1_constant(pi / 2, eta);
  const cplx I100 = plain_integral(s, eta);
  CHECK(std::abs(I100 * 1e4 - C1) <= 1e-4 * std::abs(C1));
  const cplx I200 = plain_integral(s, eta.with_tau(200.0));
  CHECK(std::abs(I200 / I100 - 0.25) < 1e-6);
  CHECK(std::abs(corner_integral(s, {0.0, [](double) { return cplx(0.0); }}, eta)) == 0.0);

  try {
    corner_integral(s, {-2.0, [](double) { return cplx(1.0); }}, eta);
    FAIL("expected NonIntegrable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegrable);
  }
}

TEST_CASE("C1 closed-form values") {
  // Along the first edge of a right angle the branches give +i and -i. That direction does not
  // decay on the second edge, so quadrature is compared just inside the cone instead.
  const Sector right = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  for (int b : {1, -1}) {
    CHECK(std::abs(c1_constant(pi / 2, EtaVector::make(1.0, 0.0, b)) - double(b) * I) < 1e-14);
    const EtaVector inside = EtaVector::make(200.0, 0.3, b);
    const cplx C1 = c1_constant(pi / 2, inside);
    CHECK(std::abs(plain_integral(right, inside) * 4e4 - C1) <= 1e-4 * std::abs(C1));
  }
  for (double psi0 : {0.1, 1.0, 2.0, 3.0})
    for (double phi : {0.0, 0.7, 2.0})
      for (int b : {1, -1}) CHECK(std::abs(c1_constant(psi0, EtaVector::make(1.0, phi, b))) > 1e-8);
  const EtaVector eta = EtaVector::make(1.0, 0.4, 1);
  CHECK(std::abs(c1N0_constant({0, 0.5, 0.5}, 1.1, eta) - c1_constant(1.1, eta)) < 1e-14);
}

TEST_CASE("C0 closed-form values") {
  const HarmonicPolynomial2D quad{2, 1.0, 0.3};
  for (int b : {1, -1}) CHECK(std::abs(c0_constant(quad, pi / 2, EtaVector::make(1.0, 0.6, b))) < 1e-14);

  const HarmonicPolynomial2D lin{1, 1.0, 0.0};
  for (double psi0 : {0.3, 1.5, 2.9}) CHECK(std::abs(c0_constant(lin, psi0, EtaVector::make(1.0, psi0 / 2, 1))) > 1e-6);

  const EtaVector bis = EtaVector::make(1.0, pi / 4, 1);
  CHECK(std::abs(c0_constant(lin, pi / 2, bis)) == doctest::Approx(2.0));

  // Quadrature oracle: tau^(N+1) int exp(eta.x) V.eta at tau = 200.
  const Sector s = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  const EtaVector e200 = bis.with_tau(200.0);
  const CVec2 ev = e200.vector();
  const cplx q = corner_integral(s, {0.0, [&](double psi) { return dot(lin.gradient(unit_vector(psi)), ev); }}, e200);
  CHECK(std::abs(200.0 * q - c0_constant(lin, pi / 2, bis)) < 1e-6);

  CHECK_THROWS_AS(c0_constant({1, 0.0, 0.0}, 1.0, bis), Error);
}

TEST_CASE("C~ reductions") {
  const LinearGradient V{{cplx(-0.2, -0.15), cplx(0.15, 0.3)}, {cplx(-0.2, 0.15), cplx(0.15, -0.3)}};
  const EtaVector eta = EtaVector::make(1.0, 0.5, 1);
  const cplx v0 = 1.0;
  const CTilde t = ctilde_constants(V, v0, 0.0, 0.7, 1.0, 1.2, eta);
  CHECK(std::abs(t.c1 - (-0.7 * c1_constant(1.2, eta))) < 1e-12);
  CHECK_THROWS_AS(ctilde_constants(V, 0.0, 0.3, 0.5, 1.0, 1.2, eta), Error);
}

TEST_CASE("decay fits") {
  const auto taus = tau_ladder(20.0, 200.0, 8);
  REQUIRE(taus.size() == 8);
  CHECK(taus.front() == doctest::Approx(20.0));
  CHECK(taus.back() == doctest::Approx(200.0));
  std::vector<cplx> exact, perturbed;
  for (double t : taus) {
    exact.push_back(3.0 / (t * t));
    perturbed.push_back((1 + 1 / t) / (t * t));
  }
  const AsymptoticFit a = fit_decay(taus, exact);
  CHECK(a.exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(a.constant - 3.0) < 1e-10);
  const AsymptoticFit b = fit_decay(taus, perturbed);
  CHECK(b.exponent > -2.05);
  CHECK(b.exponent < -1.95);

  std::vector<cplx> with_zero = exact;
  with_zero[3] = 0.0;
  try {
    fit_decay(taus, with_zero);
    FAIL("expected ZeroSample");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroSample);
  }
}

TEST_CASE("general exponent bounds on constant profiles") {
  const Sector s = Sector::make({0, 0}, 0.0, 1.2, 1.0);
  const EtaVector eta = EtaVector::make(20.0, 0.6, 1);
  const auto taus = tau_ladder(20.0, 300.0, 6);
  const BoundReport flat = general_bound_check(LocalExpansion::constant_profiles(0, 0, 0, 0), s, eta, taus);
  REQUIRE(flat.rows.size() == 2);
  CHECK(flat.all_pass());
  for (const auto& r : flat.rows) {
    if (r.term == "gradient") CHECK(r.bound == doctest::Approx(-1.0));
    if (r.term == "potential") CHECK(r.bound == doctest::Approx(-2.0));
  }
  const BoundReport steep = general_bound_check(LocalExpansion::constant_profiles(0, 2, 0, 0), s, eta, taus);
  CHECK(steep.all_pass());
  for (const auto& r : steep.rows)
    if (r.term == "gradient") CHECK(r.fit.exponent <= -3 + 0.05);
}
