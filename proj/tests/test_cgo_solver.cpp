#include <doctest.h>

#include "cornerlab/cgo_solver.hpp"

using namespace cornerlab;

namespace {

double bump(Vec2 x, Vec2 c, double w2) { return std::exp(-dot(x - c, x - c) / w2); }

const Grid small{128, 16.0};

}  // namespace

TEST_CASE("contrast potential from coefficients") {
  const RArray one = RArray::Ones(small.size());
  const ContrastPotential zero = build_q(small, one, one, 1.5);
  CHECK(zero.q.abs().maxCoeff() == 0.0);

  const double k = 1.5;
  const RArray rho = sample_real(small, [](Vec2 x) { return 1 + 0.4 * bump(x, {0, 0}, 0.5); });
  const ContrastPotential q = build_q(small, one, rho, k);
  const CArray expected = sample(small, [&](Vec2 x) { return cplx(-k * k * 0.4 * bump(x, {0, 0}, 0.5)); });
  CHECK((q.q - expected).abs().maxCoeff() < 1e-12);

  RArray bad = one;
  bad(small.index(64, 64)) = -0.5;
  try {
    build_q(small, bad, one, k);
    FAIL("expected EllipticityViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EllipticityViolated);
  }
}

TEST_CASE("contrast potential against central differences") {
  // gamma = 1 + bump, rho = 1: q = gamma^(-1/2) Lap gamma^(1/2) - k^2 (1/gamma - 1).
  const double k = 1.0;
  const auto gam = [](Vec2 x) { return 1 + 0.3 * bump(x, {0.1, 0}, 0.6); };
  const RArray G = sample_real(small, gam);
  const ContrastPotential q = build_q(small, G, RArray::Ones(small.size()), k);
  const double h = 1e-3;
  for (Vec2 x : {Vec2{0, 0}, Vec2{0.5, 0.25}, Vec2{-0.75, 0.5}}) {
    auto s = [&](Vec2 y) { return std::sqrt(gam(y)); };
    const double lap = (s(x + Vec2{h, 0}) + s(x - Vec2{h, 0}) + s(x + Vec2{0, h}) + s(x - Vec2{0, h}) - 4 * s(x)) / (h * h);
    const double ref = lap / s(x) - k * k * (1 / gam(x) - 1);
    const int i = static_cast<int>(std::lround((x.x + small.L / 2) / small.h()));
    const int j = static_cast<int>(std::lround((x.y + small.L / 2) / small.h()));
    CHECK(std::abs(q.q(small.index(i, j)).real() - ref) < 1e-5);
  }
}

TEST_CASE("Faddeev inverse") {
  const Grid g{256, 16.0};
  const EtaVector eta = EtaVector::make(30.0, 1.0, -1);
  const CVec2 ev = eta.vector();
  const double w2 = 0.5;
  const CArray G = sample(g, [&](Vec2 x) { return cplx(std::exp(-dot(x, x) / w2)); });
  const CArray f = sample(g, [&](Vec2 x) {
    const double e = std::exp(-dot(x, x) / w2);
    return (4 * dot(x, x) / (w2 * w2) - 4 / w2) * e + 2.0 * (ev.x * (-2 * x.x / w2) + ev.y * (-2 * x.y / w2)) * e;
  });
  const CArray r = faddeev_apply(f, g, eta);
  CHECK((r - G).abs().maxCoeff() <= 1e-8);
  CHECK((faddeev_apply(2.0 * f, g, eta) - 2.0 * r).abs().maxCoeff() <= 1e-14);
  CHECK(faddeev_apply(CArray::Zero(g.size()), g, eta).abs().maxCoeff() == 0.0);
  CHECK((faddeev_operator(r, g, eta) - f).abs().maxCoeff() <= 1e-8 * f.abs().maxCoeff());
}

TEST_CASE("CGO fixed point") {
  const double k = 1.0;
  const RArray one = RArray::Ones(small.size());
  const ContrastPotential none = build_q(small, one, one, k);
  const CgoSolution trivial = solve_cgo(none, EtaVector::make(50.0, 0.0, 1));
  CHECK(trivial.iterations <= 1);
  CHECK(trivial.r.abs().maxCoeff() == 0.0);

  const RArray G = sample_real(small, [](Vec2 x) { return 1 + 0.3 * bump(x, {0.2, 0}, 0.36); });
  const RArray R = sample_real(small, [](Vec2 x) { return 1 + 0.5 * bump(x, {0, 0.3}, 0.36); });
  const ContrastPotential q = build_q(small, G, R, k);
  const CgoSolution s50 = solve_cgo(q, EtaVector::make(50.0, 0.7, 1));
  const CgoSolution s100 = solve_cgo(q, EtaVector::make(100.0, 0.7, 1));
  CHECK(lp_norm(s100.r, small, 2) < lp_norm(s50.r, small, 2));
  CHECK(cgo_equation_residual(q, s100) <= 1e-8);

  const CgoField w = cgo_field(small, G, s100);
  CHECK(cgo_pde_residual(small, G, R, k, w, 4.0) <= 1e-6);
  CHECK(gradient_identity_residual(small, G, s100, w) <= 1e-8);

  // A strong potential with a small phase does not contract.
  const RArray strong = sample_real(small, [](Vec2 x) { return 1 + 40.0 * bump(x, {0, 0}, 0.36); });
  try {
    solve_cgo(build_q(small, one, strong, 2.0), EtaVector::make(0.1, 0.0, 1));
    FAIL("expected NoContraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoContraction);
  }
}

TEST_CASE("residual decay report") {
  const RArray one = RArray::Ones(small.size());
  const Sector s = Sector::make({-0.6, -0.6}, 0.0, pi / 2, 1.5);
  const EtaVector dir = EtaVector::make(50.0, pi / 4, 1);
  const auto taus = tau_ladder(50.0, 400.0, 6);
  const DecayReport none = residual_decay_report(build_q(small, one, one, 1.0), s, dir, taus, 2.0);
  CHECK(none.degenerate);
  for (double n : none.norms) CHECK(n == 0.0);

  const RArray R = sample_real(small, [](Vec2 x) { return 1 + 0.5 * bump(x, {0, 0}, 0.36); });
  const ContrastPotential q = build_q(small, one, R, 1.0);
  const DecayReport p4 = residual_decay_report(q, s, dir, taus, 4.0);
  REQUIRE(p4.fit.has_value());
  CHECK(p4.fit->exponent <= -0.4);
  const DecayReport p2 = residual_decay_report(q, s, dir, taus, 2.0);
  REQUIRE(p2.fit.has_value());
  CHECK(p2.fit->exponent <= -0.9);
}
