#include <doctest.h>

#include "cornerlab/identities.hpp"

using namespace cornerlab;

TEST_CASE("Liouville phases are isotropic up to k") {
  const double k = 2.0;
  for (double growth : {0.0, 0.5, 3.0}) {
    const CVec2 z = liouville_phase(k, 1.0, 0.4, growth);
    CHECK(std::abs(dot(z, z) + k * k) < 1e-13);
  }
}

TEST_CASE("grid interpolation converges") {
  const FieldSampler f = exponential_wave(liouville_phase(2.0, 1.0, 0.3, 0.4));
  const Vec2 x{0.123, -0.211};
  double prev = 1.0;
  for (double h : {0.08, 0.04, 0.02}) {
    const int n = static_cast<int>(2.0 / h) + 1;
    const FieldSampler g = interpolated_field(sample_on_grid(f, {-1, -1}, h, n, n));
    const double err = std::abs(g.value(x) - f.value(x)) + norm(g.gradient(x) - f.gradient(x));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-7);
}

TEST_CASE("manufactured pair solves its medium") {
  const double k = 2.0;
  const SmoothConductivity gam = gaussian_bump({0.1, 0.05}, 0.5, 0.4);
  const ConvexPolygon omega = ConvexPolygon::regular(5, {0, 0}, 0.8, 0.2);
  const MediumSpec m = liouville_medium(gam, k, 1.0, omega);
  const FieldSampler w = liouville_solution(gam, liouville_phase(k, 1.0, 2.0, 0.8));
  CHECK(weak_pde_residual(m, k, w, omega) < 1e-9);

  // A plane wave is not a solution inside the bump.
  const FieldSampler pw = incident_sampler(PlaneWave{k, {1, 0}});
  CHECK(weak_pde_residual(m, k, pw, omega) > 1e-4);
  try {
    transmission_identity_residual(m, k, pw, pw, pw, omega);
    FAIL("expected TestFieldInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TestFieldInvalid);
  }
}

TEST_CASE("transmission identity") {
  const double k = 2.0;
  const ConvexPolygon omega = ConvexPolygon::regular(5, {0, 0}, 0.8, 0.2);

  // Zero contrast: both sides vanish.
  const MediumSpec vac = MediumSpec::vacuum(omega);
  const FieldSampler pw = incident_sampler(PlaneWave{k, unit_vector(0.7)});
  const IdentityReport z = transmission_identity_residual(vac, k, pw, pw, pw, omega);
  CHECK(std::abs(z.lhs) < 1e-14);
  CHECK(std::abs(z.rhs) < 1e-14);

  // Exact manufactured fields: quadrature error only.
  const SmoothConductivity gam = gaussian_bump({0.1, 0.05}, 0.5, 0.4);
  const MediumSpec m = liouville_medium(gam, k, 1.0, omega);
  const FieldSampler u = liouville_solution(gam, liouville_phase(k, 1.0, 0.3, 0.5));
  const FieldSampler v = exponential_wave(liouville_phase(k, 1.0, 1.0, 0.0));
  const FieldSampler w = liouville_solution(gam, liouville_phase(k, 1.0, 2.0, 0.8));
  const IdentityReport r = transmission_identity_residual(m, k, u, v, w, omega);
  CHECK(r.relative < 1e-10);
  CHECK(std::abs(r.lhs) > 1e-3);

  // Second-order decay for grid-sampled data.
  std::vector<double> res;
  for (double h : {0.08, 0.04}) {
    const int n = static_cast<int>(2.0 / h) + 1;
    auto grid = [&](const FieldSampler& f) { return interpolated_field(sample_on_grid(f, {-1, -1}, h, n, n)); };
    res.push_back(transmission_identity_residual(m, k, grid(u), grid(v), grid(w), omega).relative);
  }
  CHECK(res[1] <= 1e-5);
  CHECK(res[0] / res[1] >= 4.0);
}

TEST_CASE("sector identity preconditions") {
  const double k = 2.0;
  const Sector s = Sector::make({0, 0}, 0.0, pi / 2, 0.25);
  const SmoothConductivity flat = edge_flat_bump(s, {0.25, 0.25}, 0.3, 40.0);
  // g and grad g vanish on both edges.
  for (double r : {0.05, 0.2}) {
    for (Vec2 p : {s.point(r, 0.0), s.point(r, s.aperture)}) {
      CHECK(std::abs(flat.g(p)) < 1e-15);
      CHECK(norm(flat.grad(p)) < 1e-15);
    }
  }
  const ConvexPolygon hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const MediumSpec vac = MediumSpec::vacuum(hull);
  const FieldSampler pw = incident_sampler(PlaneWave{k, unit_vector(0.3)});
  const IdentityReport z = sector_identity_residual(vac, k, pw, pw, pw, s);
  CHECK(std::abs(z.lhs) + std::abs(z.rhs) < 1e-14);

  // Mismatched Cauchy data on the edges.
  const FieldSampler other = incident_sampler(PlaneWave{k, unit_vector(1.3)});
  try {
    sector_identity_residual(vac, k, pw, other, pw, s);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("smooth cutoff") {
  CHECK(smooth_cutoff({0.1, 0}, {0, 0}, 0.5, 1.0) == 1.0);
  CHECK(smooth_cutoff({2.0, 0}, {0, 0}, 0.5, 1.0) == 0.0);
  const double mid = smooth_cutoff({0.75, 0}, {0, 0}, 0.5, 1.0);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
}
