#include <doctest.h>

#include <random>

#include "cornerlab/helmholtz_fields.hpp"

using namespace cornerlab;

namespace {

// Five-point Laplacian plus k^2 u, relative to |k^2 u| + |grad u| k.
double helmholtz_residual(const IncidentField& f, Vec2 x, double k) {
  const double h = 1e-3;
  const cplx u = evaluate(f, x);
  const cplx lap = (evaluate(f, x + Vec2{h, 0}) + evaluate(f, x - Vec2{h, 0}) + evaluate(f, x + Vec2{0, h}) +
                    evaluate(f, x - Vec2{0, h}) - 4.0 * u) /
                   (h * h);
  return std::abs(lap + k * k * u) / (k * k * std::max(std::abs(u), norm(gradient(f, x)) / k));
}

}  // namespace

TEST_CASE("point values of the incident families") {
  const PlaneWave pw{1.0, {1.0, 0.0}};
  CHECK(std::abs(evaluate(pw, {0, 0}) - 1.0) < 1e-15);
  const CVec2 g = gradient(pw, {0, 0});
  CHECK(std::abs(g.x - I) < 1e-15);
  CHECK(std::abs(g.y) < 1e-15);

  const BesselMode b{1.0, 0, 1.0, {0, 0}};
  CHECK(std::abs(evaluate(b, {0, 0}) - 1.0) < 1e-15);
  CHECK(norm(gradient(b, {0, 0})) < 1e-15);

  Herglotz h{1.0, std::vector<cplx>(64, 1.0 / (2 * pi))};
  CHECK(std::abs(evaluate(h, {0, 0}) - 1.0) < 1e-13);
  CHECK(h.kernel_norm() == doctest::Approx(1.0 / std::sqrt(2 * pi)));
}

TEST_CASE("every family solves the Helmholtz equation") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Herglotz h{1.7, {}};
  for (int j = 0; j < 32; ++j) h.kernel.push_back(std::polar(1.0 / (1 + j % 5), 0.3 * j));
  const std::vector<IncidentField> fields{PlaneWave{2.0, unit_vector(0.4)}, BesselMode{1.3, 3, {0.5, -1.0}, {0.2, 0.1}},
                                          BesselMode{1.0, -2, 1.0, {0, 0}}, h};
  for (const auto& f : fields)
    for (int i = 0; i < 10; ++i) {
      const Vec2 x{u(gen), u(gen)};
      CHECK(helmholtz_residual(f, x, wavenumber(f)) < 1e-5);
    }
}

TEST_CASE("closed-form gradients match finite differences") {
  const BesselMode b{1.4, 2, cplx(0.3, 1.0), {0.1, -0.2}};
  const Vec2 x{0.7, 0.4};
  const double h = 1e-6;
  const CVec2 g = gradient(b, x);
  CHECK(std::abs(g.x - (evaluate(b, x + Vec2{h, 0}) - evaluate(b, x - Vec2{h, 0})) / (2 * h)) < 1e-8);
  CHECK(std::abs(g.y - (evaluate(b, x + Vec2{0, h}) - evaluate(b, x - Vec2{0, h})) / (2 * h)) < 1e-8);
}

TEST_CASE("jet orders of standard fields") {
  const FieldExpansion p = taylor_jet(PlaneWave{1.0, {1.0, 0.0}}, {0, 0}, 4);
  CHECK(p.N0 == 0);
  CHECK(p.N == 0);
  CHECK(std::abs(p.v0 - 1.0) < 1e-15);
  CHECK(std::abs(p.Vlead.x[0] - I) < 1e-15);
  CHECK(std::abs(p.Vlead.y[0]) < 1e-15);

  const FieldExpansion b = taylor_jet(BesselMode{1.0, 2, 1.0, {0, 0}}, {0, 0}, 4);
  CHECK(b.N0 == 2);
  CHECK(b.N == 1);

  // sin(x1) = x1 - x1^3/6 + ...
  std::vector<HomogeneousPoly> terms{HomogeneousPoly(0, {0.0}), HomogeneousPoly(1, {0.0, 1.0}), HomogeneousPoly(2),
                                     HomogeneousPoly(3, {0.0, 0.0, 0.0, -1.0 / 6})};
  const FieldExpansion s = make_expansion({0, 0}, 1.0, terms);
  CHECK(s.N0 == 1);
  CHECK(s.N == 0);

  std::vector<HomogeneousPoly> zero(4);
  for (int d = 0; d < 4; ++d) zero[d] = HomogeneousPoly(d);
  try {
    make_expansion({0, 0}, 1.0, zero);
    FAIL("expected DegenerateJet");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateJet);
  }
}

TEST_CASE("jet structure checks") {
  CHECK(verify_jet_structure(taylor_jet(PlaneWave{1.0, unit_vector(0.3)}, {0.2, 0.1}, 6), 1.0, 1e-12).all_pass());
  const JetReport b = verify_jet_structure(taylor_jet(BesselMode{1.0, 2, 1.0, {0, 0}}, {0, 0}, 6), 1.0, 1e-12);
  CHECK(b.all_pass());

  // v0 = 1, v1 = x1 but V0 = 0 and V1 = (-x1, 0): N0 = 0 with N = 1 and a nonzero v1 and lap v3.
  std::vector<HomogeneousPoly> terms{HomogeneousPoly(0, {1.0}), HomogeneousPoly(1, {0.0, 1.0}),
                                     HomogeneousPoly(2, {0.0, 0.0, -0.5}), HomogeneousPoly(3, {0.0, 0.0, 0.0, 1.0})};
  std::vector<VectorPoly> grads{{HomogeneousPoly(0, {0.0}), HomogeneousPoly(0, {0.0})},
                                {HomogeneousPoly(1, {0.0, -1.0}), HomogeneousPoly(1, {0.0, 0.0})},
                                {HomogeneousPoly(2), HomogeneousPoly(2)}};
  const FieldExpansion bad = make_expansion({0, 0}, 1.0, terms, grads);
  REQUIRE(bad.N0 == 0);
  REQUIRE(bad.N == 1);
  const JetReport r = verify_jet_structure(bad, 1.0, 1e-10);
  CHECK_FALSE(r.all_pass());
  bool degree_row_failed = false;
  for (const auto& item : r.items)
    if (item.name == "degree_order") degree_row_failed = !item.pass;
  CHECK(degree_row_failed);
}

TEST_CASE("class E membership") {
  const Sector right = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  CHECK_FALSE(class_E_membership(PlaneWave{1.0, {1.0, 0.0}}, right).has_value());
  CHECK(class_E_membership(BesselMode{1.0, 2, 1.0, {0, 0}}, right) == 1);
  const Sector third = Sector::make({0, 0}, 0.3, pi / 3, 1.0);
  CHECK(class_E_membership(BesselMode{1.0, 3, 1.0, {0, 0}}, third) == 1);
}

TEST_CASE("Herglotz least squares") {
  BoundaryTrace t = circle_trace({0, 0}, 1.0, 128);
  fill_trace(t, PlaneWave{2.0, unit_vector(0.3)});
  const HerglotzFit fit = herglotz_least_squares(t, 2.0, 64, 1e-8);
  CHECK(fit.misfit <= 1e-6);
  CHECK(std::isfinite(fit.kernel_norm));

  BoundaryTrace z = circle_trace({0, 0}, 1.0, 64);
  fill_trace(z, PlaneWave{2.0, {1.0, 0.0}});
  std::fill(z.values.begin(), z.values.end(), cplx(0.0));
  std::fill(z.normal_derivatives.begin(), z.normal_derivatives.end(), cplx(0.0));
  const HerglotzFit zero = herglotz_least_squares(z, 2.0, 32, 1e-4);
  CHECK(zero.kernel_norm == 0.0);
}
