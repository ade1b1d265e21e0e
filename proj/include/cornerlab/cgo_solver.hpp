#pragma once

#include <optional>
#include <vector>

#include "cornerlab/corner_asymptotics.hpp"
#include "cornerlab/spectral_grid.hpp"

namespace cornerlab {

// q_c = gamma^(-1/2) Lap gamma^(1/2) - k^2 (rho / gamma - 1); vanishes where gamma = rho = 1.
struct ContrastPotential {
  Grid grid;
  CArray q;
  double k = 1.0;
};

// Throws EllipticityViolated when min gamma <= 0 and SupportViolated when q reaches into the
// outer quarter of the box.
ContrastPotential build_q(const Grid& g, const RArray& gamma, const RArray& rho, double k);

// -|xi|^2 + 2 i eta.xi
cplx faddeev_symbol(const EtaVector& eta, double xi1, double xi2);

// Solves (Lap + 2 eta.grad) r = f in the twisted space. Throws SymbolTooSmall when some grid
// frequency gives |symbol| < 1e-8 tau^2.
CArray faddeev_apply(const CArray& f, const Grid& g, const EtaVector& eta);

// (Lap + 2 eta.grad) r for twisted r.
CArray faddeev_operator(const CArray& r, const Grid& g, const EtaVector& eta);

struct CgoSolution {
  EtaVector eta;
  CArray r;
  int iterations = 0;
  double fixed_point_residual = 0.0;
  std::vector<double> increments;
};

// Fixed point r <- G(q (1 + r)). Throws NoContraction after 5 consecutive non-decreasing
// increments and NoConvergence when max_iter is hit.
CgoSolution solve_cgo(const ContrastPotential& q, const EtaVector& eta, double tol = 1e-12,
                      int max_iter = 300);

// Relative residual of (Lap + 2 eta.grad) r - q (1 + r).
double cgo_equation_residual(const ContrastPotential& q, const CgoSolution& sol);

struct DriftField {
  CArray bx;
  CArray by;
};

DriftField drift_field(const Grid& g, const RArray& gamma);

// w = W exp(eta.x), W = gamma^(-1/2) (1 + r); grad w = (grad W + eta W) exp(eta.x).
struct CgoField {
  Grid grid;
  EtaVector eta;
  CArray W;
  CArray Wx;
  CArray Wy;
};

CgoField cgo_field(const Grid& g, const RArray& gamma, const CgoSolution& sol);

// Interior relative residual of exp(-eta.x) [div(gamma grad w) + k^2 (rho - gamma) w].
double cgo_pde_residual(const Grid& g, const RArray& gamma, const RArray& rho, double k,
                        const CgoField& w, double interior_radius);

// Max difference between grad w from the field and gamma^(-1/2)(grad r + (1 + r)(eta - b)),
// both without the exponential, relative to the max of the latter.
double gradient_identity_residual(const Grid& g, const RArray& gamma, const CgoSolution& sol,
                                  const CgoField& w);

struct DecayReport {
  std::vector<double> taus;
  std::vector<double> norms;
  std::optional<AsymptoticFit> fit;
  double bound = 0.0;
  bool degenerate = false;
  bool pass = false;
};

// L^p norms of r on the sector along the ladder; exponent must be <= -2/p + slack.
DecayReport residual_decay_report(const ContrastPotential& q, const Sector& s,
                                  const EtaVector& direction, const std::vector<double>& taus,
                                  double p, double slack = 0.1);

}  // namespace cornerlab
