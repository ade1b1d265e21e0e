#pragma once

#include <vector>

#include "cornerlab/helmholtz_fields.hpp"
#include "cornerlab/medium.hpp"
#include "cornerlab/spectral_grid.hpp"

namespace cornerlab {

// Cell-centred patch: node (i, j) at origin + (i h, j h), storage j n + i.
struct PatchGrid {
  Vec2 origin;
  int n = 0;
  double h = 0.0;

  Vec2 point(int i, int j) const { return origin + Vec2{i * h, j * h}; }
  Eigen::Index index(int i, int j) const { return static_cast<Eigen::Index>(j) * n + i; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(n) * n; }
};

struct SolverOptions {
  double h = 0.0;                       // cell size; 0 picks it from points_per_wavelength
  double points_per_wavelength = 20.0;
  double tol = 1e-10;
  int restart = 60;
  int max_iter = 3000;
  int supersample = 16;                 // per axis, in cells cut by a coefficient jump
  // Sources are integrated on a grid refined by an odd factor until it reaches this resolution;
  // the unknowns stay on the coarse grid. 0 disables the refinement.
  double quadrature_ppw = 80.0;
};

// One quadrature node of the contrast source, weight h^2 of the refined grid.
struct SourceNode {
  Vec2 p;
  double mc = 0.0;
  double ma = 0.0;
  cplx u;
  CVec2 grad;
};

struct ScatteringSolution {
  double k = 1.0;
  IncidentField incident;
  PatchGrid grid;
  RArray ma;  // cell average of a - 1
  RArray mc;  // cell average of c - 1
  CArray u_in;
  CArray u_scattered;
  CArray u_total;
  CArray ux;  // total gradient
  CArray uy;
  double solver_residual = 0.0;
  int iterations = 0;
  int refinement = 1;               // quadrature grid spacing is grid.h / refinement
  std::vector<SourceNode> sources;  // contrast support on the quadrature grid
};

// 2D outgoing kernel (i/4) H0(k|x|) truncated at radius R, Fourier transform at |xi| = s.
cplx truncated_kernel_symbol(double s, double k, double R);

// Lippmann-Schwinger solve in (u, grad u). Throws ResolutionTooCoarse below 10 points per
// wavelength and NoConvergence when GMRES stalls.
ScatteringSolution solve_scattering(const MediumSpec& m, const IncidentField& f,
                                    const SolverOptions& opt);

struct FarField {
  double k = 1.0;
  std::vector<double> angles;
  std::vector<cplx> values;
  double l2_norm = 0.0;
  double sup_norm = 0.0;

  void recompute_norms();
};

inline cplx far_field_factor(double k) { return std::exp(I * (pi / 4)) / std::sqrt(8 * pi * k); }

cplx far_field_at(const ScatteringSolution& sol, double angle);
FarField far_field(const ScatteringSolution& sol, int n_angles);

// Separation-of-variables far field for a homogeneous disc (a_in, c_in) and a plane wave.
FarField mie_far_field(const DiscData& disc, double k, Vec2 direction, int n_angles);

// Relative L2(S^1) distance of two far fields on the same angle grid.
double far_field_distance(const FarField& a, const FarField& b, bool relative = true);

// |(|F|^2) + 2 sqrt(2 pi / k) Re(exp(i pi/4) F(direction))| / |F|^2 for real coefficients.
double optical_theorem_defect(const FarField& f, Vec2 direction);

// Nearest FFT-friendly size (factors 2, 3, 5, 7) not below n.
int fft_size_at_least(int n);

}  // namespace cornerlab
