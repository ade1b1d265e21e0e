#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/geometry.hpp"
#include "cornerlab/helmholtz_fields.hpp"
#include "cornerlab/polynomial.hpp"

namespace cornerlab {

// eta = -tau (d + i d_perp), d at angle phi, d_perp at phi - branch * pi / 2.
struct EtaVector {
  double tau = 1.0;
  double phi = 0.0;
  int branch = 1;

  static EtaVector make(double tau, double phi, int branch);

  Vec2 d() const { return unit_vector(phi); }
  Vec2 d_perp() const { return unit_vector(phi - branch * pi / 2); }
  CVec2 vector() const;
  cplx dot(Vec2 x) const;
  // Same direction and branch, different magnitude.
  EtaVector with_tau(double t) const { return {t, phi, branch}; }
  // Direction expressed relative to the first edge of s.
  EtaVector local_to(const Sector& s) const { return {tau, phi - s.theta_ref, branch}; }
};

struct IncompleteGammaCheck {
  cplx numeric;
  cplx closed_form;
  double error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// int_0^s t^(b-1) exp(-mu t) dt against Gamma(b) / mu^b, evaluated in 130-digit arithmetic.
IncompleteGammaCheck incomplete_gamma_check(double b, cplx mu, double s);

// Integrand r^p h(psi) on a sector; psi is measured from the first edge.
struct CornerIntegrand {
  double radial_power = 0.0;
  std::function<cplx(double)> angular;
};

// int_{C_eps} r^p h(psi) exp(eta.(x - vertex)) dx by polar Gauss quadrature.
cplx corner_integral(const Sector& s, const CornerIntegrand& f, const EtaVector& eta);

// Limits as tau -> infinity below use the local direction: phi measured from the first edge.

// A(m) = int_0^psi0 exp(i m psi) dpsi.
cplx angular_moment(double m, double psi0);

// Leading constant of int r^p sum_m a_m exp(i m psi) exp(eta.x) dx, i.e. the integral times
// tau^(p+2) on the infinite sector.
cplx harmonic_limit(double p, const std::vector<std::pair<int, cplx>>& modes, double psi0,
                    const EtaVector& eta);

// V = grad of a degree N+1 harmonic polynomial; limit of tau^(N+1) int exp(eta.x) V.eta.
cplx c0_constant(const HarmonicPolynomial2D& potential, double psi0, const EtaVector& eta);

// Limit of tau^2 int exp(eta.x).
cplx c1_constant(double psi0, const EtaVector& eta);

// Limit of tau^(N0+2) int v exp(eta.x), v harmonic of degree N0.
cplx c1N0_constant(const HarmonicPolynomial2D& v, double psi0, const EtaVector& eta);

// Degree-one leading gradient term V(x) = P (x1 + i x2) + Q (x1 - i x2), P and Q complex 2-vectors.
struct LinearGradient {
  CVec2 P;
  CVec2 Q;

  static LinearGradient from_poly(const VectorPoly& v);
  CVec2 operator()(Vec2 x) const;
  cplx divergence() const;
  cplx curl() const;
};

struct CTilde {
  cplx c0;
  cplx c1;
};

// Closed-form pair following the displayed expression for the divergent degree-one case.
CTilde ctilde_constants(const LinearGradient& V, cplx v0, double gamma0, double rho0, double k,
                        double psi0, const EtaVector& eta);

// Same pair from the exact angular moments of V.eta. Differs from ctilde_constants in general;
// this is the one that matches quadrature.
CTilde ctilde_constants_direct(const LinearGradient& V, cplx v0, double gamma0, double rho0,
                               double k, double psi0, const EtaVector& eta);

struct AsymptoticFit {
  double exponent = 0.0;
  cplx constant;
  double rms_residual = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
};

// Least squares in (log tau, log |value|). constant = value_last / tau_last^exponent.
AsymptoticFit fit_decay(const std::vector<double>& taus, const std::vector<cplx>& values);

// Geometric tau ladder, both ends included.
std::vector<double> tau_ladder(double lo, double hi, int count);

struct LocalExpansion {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double sigma = 0.5;
  std::function<cplx(double)> gamma_beta;
  std::function<cplx(double)> rho0_profile;
  std::function<CVec2(double)> V_profile;
  std::function<cplx(double)> vtilde_profile;

  static LocalExpansion constant_profiles(double alpha, double beta, double alpha0, double beta0);
};

struct BoundRow {
  std::string term;  // "gradient" or "potential"
  double bound = 0.0;
  AsymptoticFit fit;
  bool pass = false;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  bool all_pass() const;
};

// Fits the decay of the gradient- and potential-type corner integrals over the ladder and
// compares against -(n + beta + alpha - 1) and -(n + beta0 + alpha0), n = 2.
BoundReport general_bound_check(const LocalExpansion& le, const Sector& s, const EtaVector& eta,
                                const std::vector<double>& taus, double slack = 0.05);

}  // namespace cornerlab
