#pragma once

#include <functional>

#include "cornerlab/cgo_solver.hpp"
#include "cornerlab/forward_solver.hpp"
#include "cornerlab/medium.hpp"

namespace cornerlab {

// A field known through point values and gradients.
struct FieldSampler {
  std::function<cplx(Vec2)> value;
  std::function<CVec2(Vec2)> gradient;
};

// Node samples on a uniform lattice: node (i, j) at origin + (i h, j h), storage j nx + i.
struct GridData {
  Vec2 origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  CArray values;
};

GridData sample_on_grid(const FieldSampler& f, Vec2 origin, double h, int nx, int ny);

// Tensor Lagrange interpolation with `stencil` points per axis (2..8). The gradient is the
// derivative of the interpolant, so stencils are one-sided near the lattice edge.
FieldSampler interpolated_field(GridData data, int stencil = 6);
// Same, with separately sampled gradient components.
FieldSampler interpolated_field(GridData values, GridData dx, GridData dy, int stencil);

FieldSampler incident_sampler(const IncidentField& f);
FieldSampler total_field_sampler(const ScatteringSolution& sol, int stencil = 6);
// w = W exp(eta.x) with W and grad W interpolated; the exponential is exact.
FieldSampler cgo_sampler(const CgoField& w, int stencil = 8);

// gamma = 1 + g with g, grad g and Laplacian g in closed form.
struct SmoothConductivity {
  std::function<double(Vec2)> g;
  std::function<Vec2(Vec2)> grad;
  std::function<double(Vec2)> lap;

  double gamma(Vec2 x) const { return 1.0 + g(x); }
  // gamma^(-1/2) Lap gamma^(1/2)
  double liouville_potential(Vec2 x) const;
};

SmoothConductivity gaussian_bump(Vec2 center, double width, double amplitude);
// amplitude (l1 l2)^2 exp(-|x - center|^2 / width^2), l1, l2 the signed distances to the two
// edge lines of s: g and grad g vanish on both edges.
SmoothConductivity edge_flat_bump(const Sector& s, Vec2 center, double width, double amplitude);

// a = gamma, c = gamma (kappa + q / k^2) with q the Liouville potential. Then every
// gamma^(-1/2) exp(zeta.x) with zeta.zeta = -k^2 kappa solves div(a grad w) + k^2 c w = 0.
MediumSpec liouville_medium(const SmoothConductivity& s, double k, double kappa,
                            const ConvexPolygon& hull);
FieldSampler liouville_solution(const SmoothConductivity& s, CVec2 zeta);
FieldSampler exponential_wave(CVec2 zeta);
// zeta = growth e + i sqrt(growth^2 + k^2 kappa) e_perp, e at `angle`; zeta.zeta = -k^2 kappa.
CVec2 liouville_phase(double k, double kappa, double angle, double growth);

struct IdentityReport {
  cplx lhs;            // volume side
  cplx rhs;            // boundary side
  cplx boundary_term;  // same as rhs, kept for the decay ratio test
  double residual = 0.0;  // |lhs - rhs|
  double scale = 0.0;     // sum of integrals of absolute integrands
  double relative = 0.0;
  double pde_residual = 0.0;  // weak-form check on w
};

inline constexpr double test_field_tolerance = 1e-6;

// Relative weak residual of div(a grad w) + k^2 c w = 0 on the polygon against plane-wave
// test functions.
double weak_pde_residual(const MediumSpec& m, double k, const FieldSampler& w,
                         const ConvexPolygon& omega);
double weak_pde_residual(const MediumSpec& m, double k, const FieldSampler& w, const Sector& s,
                         const EtaVector* decay = nullptr);

// int_O (a-1) grad v . grad w - k^2 (c-1) v w against int_dO a dw/dn (v-u) - w (dv/dn - a du/dn).
// Throws TestFieldInvalid when w fails its PDE check.
IdentityReport transmission_identity_residual(const MediumSpec& m, double k, const FieldSampler& u,
                                              const FieldSampler& v, const FieldSampler& w,
                                              const ConvexPolygon& omega);

// Same on the truncated sector s (radius = epsilon) with the boundary integral over the arc only.
// u and v must share Cauchy data on the two edges (PreconditionViolated otherwise). `decay`
// grades the radial quadrature for exponentially concentrated w.
IdentityReport sector_identity_residual(const MediumSpec& m, double k, const FieldSampler& u,
                                        const FieldSampler& v, const FieldSampler& w,
                                        const Sector& s, const EtaVector* decay = nullptr);

// Smooth radial cutoff: 1 for |x - c| <= r1, 0 beyond r2.
double smooth_cutoff(Vec2 x, Vec2 c, double r1, double r2);

}  // namespace cornerlab
