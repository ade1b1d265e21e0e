#include <doctest.h>

#include "cornerlab/forward_solver.hpp"

using namespace cornerlab;

namespace {

MediumConfig disc_config(double a_in, double c_in) {
  MediumConfig c;
  c.kind = "disc";
  c.radius = 1.0;
  c.a_in = a_in;
  c.c_in = c_in;
  return c;
}

MediumConfig admissible_square() {
  MediumConfig c;
  c.vertices = square_vertices(1.0);
  c.corners = {CornerSpec{0.5, 2.5, 0.0, 0.5}};
  c.a_bulk = 0.2;
  return c;
}

}  // namespace

TEST_CASE("medium assembly") {
  const MediumSpec sq = assemble_medium(admissible_square());
  CHECK(sq.a0 > 0);
  CHECK_FALSE(sq.no_contrast);
  const Vec2 v = sq.hull.vertex(0);
  const Vec2 inward = unit_vector(pi / 4);
  CHECK(sq.c(v + 1e-6 * inward) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(std::abs(sq.a(v + 1e-3 * inward) - 1.0) < 1e-5);
  CHECK(sq.a({5, 5}) == 1.0);
  CHECK(sq.c({5, 5}) == 1.0);

  MediumConfig dip;
  dip.vertices = square_vertices(1.0);
  dip.corners = {CornerSpec{0.0, 0.0, -1.5, 0.5}};
  try {
    assemble_medium(dip);
    FAIL("expected EllipticityViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EllipticityViolated);
  }

  MediumConfig flat;
  flat.vertices = square_vertices(1.0);
  flat.corners = {CornerSpec{}};
  CHECK(assemble_medium(flat).no_contrast);

  MediumConfig unknown;
  unknown.kind = "blob";
  CHECK_THROWS_AS(assemble_medium(unknown), Error);
}

TEST_CASE("kernel helpers") {
  CHECK(fft_size_at_least(97) == 98);
  CHECK(fft_size_at_least(128) == 128);
  CHECK(fft_size_at_least(211) == 216);
  // Near s = 0 the truncated symbol is finite.
  CHECK(std::isfinite(std::abs(truncated_kernel_symbol(0.0, 2.0, 3.0))));
  CHECK(std::isfinite(std::abs(truncated_kernel_symbol(2.0, 2.0, 3.0))));
}

TEST_CASE("zero contrast scatters nothing") {
  const MediumSpec vac = MediumSpec::vacuum(ConvexPolygon(square_vertices(1.0)));
  SolverOptions so;
  so.h = 0.05;
  const ScatteringSolution sol = solve_scattering(vac, PlaneWave{1.0, {1.0, 0.0}}, so);
  CHECK(sol.u_scattered.abs().maxCoeff() <= so.tol);
  CHECK((sol.u_total - sol.u_in - sol.u_scattered).abs().maxCoeff() == 0.0);
  CHECK(far_field(sol, 32).l2_norm <= so.tol);
}

TEST_CASE("disc far field against the series") {
  const MediumSpec m = assemble_medium(disc_config(1.0, 2.0));
  const Vec2 d{1.0, 0.0};
  SolverOptions so;
  so.points_per_wavelength = 40.0;
  const ScatteringSolution sol = solve_scattering(m, PlaneWave{2.0, d}, so);
  const FarField ff = far_field(sol, 128);
  const FarField series = mie_far_field(*m.disc, 2.0, d, 128);
  CHECK(far_field_distance(ff, series) <= 1e-3);
  CHECK(optical_theorem_defect(series, d) <= 1e-8);
  CHECK(optical_theorem_defect(ff, d) <= 0.02);

  // Coarse unknowns with refined source quadrature.
  SolverOptions coarse;
  coarse.points_per_wavelength = 10.0;
  const ScatteringSolution c10 = solve_scattering(m, PlaneWave{2.0, d}, coarse);
  CHECK(c10.refinement % 2 == 1);
  CHECK(c10.refinement >= 8);
  CHECK(far_field_distance(far_field(c10, 128), series) <= 1e-3);
  coarse.quadrature_ppw = 0.0;
  const ScatteringSolution plain = solve_scattering(m, PlaneWave{2.0, d}, coarse);
  CHECK(plain.refinement == 1);
  CHECK(far_field_distance(far_field(plain, 128), series) > 1e-3);

  // At or above the quadrature resolution nothing is refined.
  SolverOptions fine;
  fine.points_per_wavelength = 80.0;
  const ScatteringSolution a = solve_scattering(m, PlaneWave{2.0, d}, fine);
  fine.quadrature_ppw = 0.0;
  const ScatteringSolution b = solve_scattering(m, PlaneWave{2.0, d}, fine);
  CHECK(a.refinement == 1);
  CHECK((a.u_total - b.u_total).abs().maxCoeff() == 0.0);

  so.points_per_wavelength = 8.0;
  try {
    solve_scattering(m, PlaneWave{2.0, d}, so);
    FAIL("expected ResolutionTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolutionTooCoarse);
  }
}

TEST_CASE("conductivity contrast in a disc") {
  const MediumSpec m = assemble_medium(disc_config(1.5, 1.0));
  const Vec2 d{0.0, 1.0};
  SolverOptions so;
  so.points_per_wavelength = 80.0;
  const FarField ff = far_field(solve_scattering(m, PlaneWave{1.5, d}, so), 64);
  CHECK(far_field_distance(ff, mie_far_field(*m.disc, 1.5, d, 64)) <= 1e-2);
}

TEST_CASE("reciprocity and refinement stability") {
  const MediumSpec m = assemble_medium(admissible_square());
  SolverOptions so;
  so.h = 0.025;
  const double th = 0.9;
  const double ph = 2.2;
  const cplx a = far_field_at(solve_scattering(m, PlaneWave{1.0, unit_vector(ph)}, so), th);
  const cplx b = far_field_at(solve_scattering(m, PlaneWave{1.0, unit_vector(th + pi)}, so), ph + pi);
  CHECK(std::abs(a - b) <= 1e-6 * std::abs(a));

  SolverOptions coarse = so;
  coarse.h = 0.05;
  const double n1 = far_field(solve_scattering(m, PlaneWave{1.0, {1.0, 0.0}}, coarse), 64).l2_norm;
  const double n2 = far_field(solve_scattering(m, PlaneWave{1.0, {1.0, 0.0}}, so), 64).l2_norm;
  CHECK(n2 > 0.0);
  CHECK(std::abs(n1 - n2) <= 0.05 * n2);
}
