#include "cornerlab/corner_asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "cornerlab/quadrature.hpp"

namespace cornerlab {

EtaVector EtaVector::make(double tau, double phi, int branch) {
  require(tau > 0, ErrorKind::InvalidArgument, "tau must be positive");
  require(branch == 1 || branch == -1, ErrorKind::InvalidArgument, "branch must be +1 or -1");
  return {tau, phi, branch};
}

CVec2 EtaVector::vector() const {
  const Vec2 a = d();
  const Vec2 b = d_perp();
  return {-tau * cplx(a.x, b.x), -tau * cplx(a.y, b.y)};
}

cplx EtaVector::dot(Vec2 x) const { return cornerlab::dot(vector(), x); }

cplx corner_integral(const Sector& s, const CornerIntegrand& f, const EtaVector& eta) {
  const double p = f.radial_power;
  require(p > -2, ErrorKind::NonIntegrable, "radial power must exceed -2");
  if (!f.angular) return 0.0;

  // Along each ray the integrand is r^(p+1) h(psi) exp(-mu(psi) r).
  auto mu_at = [&](double psi) { return -eta.dot(unit_vector(s.theta_ref + psi)); };
  double decay = mu_at(0.0).real();
  for (int j = 1; j <= 64; ++j) decay = std::min(decay, mu_at(s.aperture * j / 64).real());

  double reach = s.radius;
  bool truncated = false;
  if (decay > 0 && 46.0 / decay < s.radius) {
    reach = 46.0 / decay;  // exp(-46) ~ 1e-20
    truncated = true;
  }
  // Once the radial integral is done per ray, the angular integrand is smooth unless the outer
  // arc still carries weight, in which case it oscillates at rate tau * radius.
  const double angular_rate = 12.0 + std::abs(p) + (truncated ? 0.0 : eta.tau * s.radius);
  const auto radial = radial_nodes(reach, eta.tau, p);
  const auto angular = angular_nodes(s.aperture, angular_rate);

  std::vector<double> radial_weight(radial.size());
  for (std::size_t i = 0; i < radial.size(); ++i) radial_weight[i] = radial[i].w * std::pow(radial[i].x, p);

  cplx total = 0.0;
  for (const auto& a : angular) {
    const cplx h = f.angular(a.x);
    if (h == 0.0) continue;
    const cplx mu = mu_at(a.x);
    cplx ray = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) ray += radial_weight[i] * std::exp(-mu * radial[i].x);
    total += a.w * h * ray;
  }
  return total;
}

cplx angular_moment(double m, double psi0) {
  if (std::abs(m) < 1e-14) return psi0;
  return (std::exp(I * (m * psi0)) - 1.0) / (I * m);
}

cplx harmonic_limit(double p, const std::vector<std::pair<int, cplx>>& modes, double psi0,
                    const EtaVector& eta) {
  const double s = eta.branch;
  const double q = p + 2;
  cplx sum = 0.0;
  for (const auto& [m, a] : modes) sum += a * angular_moment(m + s * q, psi0);
  return std::tgamma(q) * std::exp(-I * (s * q * eta.phi)) * sum;
}

cplx c0_constant(const HarmonicPolynomial2D& potential, double psi0, const EtaVector& eta) {
  require(!potential.is_zero() && potential.degree >= 1, ErrorKind::ZeroField,
          "leading gradient term vanishes");
  const int N = potential.degree - 1;
  const double n = 2;
  const double phi = eta.phi;
  const double g = std::tgamma(N + n);
  // b1: z^N coefficient of V_x; b2: conj(z)^N coefficient of V_y.
  const cplx b1 = static_cast<double>(N + 1) * potential.b_plus;
  const cplx b2 = -I * static_cast<double>(N + 1) * potential.b_minus;
  if (eta.branch == 1)
    return -2.0 * I * b1 * g / (2 * N + n) * std::exp(-I * ((N + n - 1) * phi)) *
           (1.0 - std::exp(I * ((2 * N + n) * psi0)));
  return -2.0 * b2 * g / (2 * N + n) * std::exp(I * ((N + n - 1) * phi)) *
         (1.0 - std::exp(-I * ((2 * N + n) * psi0)));
}

cplx c1_constant(double psi0, const EtaVector& eta) {
  const double n = 2;
  const double s = eta.branch;
  return s * I * std::tgamma(n) / n * std::exp(-I * (s * n * eta.phi)) *
         (1.0 - std::exp(I * (s * n * psi0)));
}

cplx c1N0_constant(const HarmonicPolynomial2D& v, double psi0, const EtaVector& eta) {
  require(!v.is_zero(), ErrorKind::ZeroField, "leading value term vanishes");
  const int N0 = v.degree;
  return harmonic_limit(N0, {{N0, v.b_plus}, {-N0, v.b_minus}}, psi0, eta);
}

LinearGradient LinearGradient::from_poly(const VectorPoly& v) {
  auto split = [](const HomogeneousPoly& c) -> std::pair<cplx, cplx> {
    if (c.degree() < 0) return {0.0, 0.0};
    require(c.degree() == 1, ErrorKind::InvalidArgument, "expected a degree-one field");
    const cplx A = c[1];
    const cplx B = c[0];
    return {(A - I * B) / 2.0, (A + I * B) / 2.0};
  };
  const auto [px, qx] = split(v.x);
  const auto [py, qy] = split(v.y);
  return {{px, py}, {qx, qy}};
}

CVec2 LinearGradient::operator()(Vec2 x) const {
  const cplx z{x.x, x.y};
  return P * z + Q * std::conj(z);
}

cplx LinearGradient::divergence() const { return P.x + Q.x + I * (P.y - Q.y); }
cplx LinearGradient::curl() const { return P.y + Q.y - I * (P.x - Q.x); }

CTilde ctilde_constants(const LinearGradient& V, cplx v0, double gamma0, double rho0, double k,
                        double psi0, const EtaVector& eta) {
  require(v0 != 0.0, ErrorKind::PreconditionViolated, "v0 must be nonzero");
  const double phi = eta.phi;
  const double s = eta.branch;
  const cplx c_plus = I * (1.0 - std::exp(4.0 * I * psi0)) * std::exp(-3.0 * I * phi) / 4.0;
  const cplx c_minus = -I * (1.0 - std::exp(-4.0 * I * psi0)) * std::exp(3.0 * I * phi) / 4.0;
  const cplx b = s > 0 ? V.P.x : I * V.Q.y;
  const cplx c_own = s > 0 ? c_plus : c_minus;
  const cplx k2v0 = k * k * v0;
  const cplx c0 = std::exp(I * (s * phi)) * std::tgamma(3.0) *
                  (-2.0 * b * c_own + k2v0 * (c_minus - s * c_plus) / 2.0);
  return {c0, gamma0 * c0 - k2v0 * rho0 * c1_constant(psi0, eta)};
}

CTilde ctilde_constants_direct(const LinearGradient& V, cplx v0, double gamma0, double rho0,
                               double k, double psi0, const EtaVector& eta) {
  require(v0 != 0.0, ErrorKind::PreconditionViolated, "v0 must be nonzero");
  const double s = eta.branch;
  // eta / tau
  const CVec2 e = std::exp(I * (s * eta.phi)) * CVec2{-1.0, I * s};
  const cplx c0 = harmonic_limit(1, {{1, dot(V.P, e)}, {-1, dot(V.Q, e)}}, psi0, eta);
  return {c0, gamma0 * c0 - k * k * v0 * rho0 * c1_constant(psi0, eta)};
}

AsymptoticFit fit_decay(const std::vector<double>& taus, const std::vector<cplx>& values) {
  require(taus.size() == values.size(), ErrorKind::InvalidArgument, "size mismatch");
  require(taus.size() >= 5, ErrorKind::InvalidArgument, "need at least 5 samples");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    require(taus[i] > 0 && (i == 0 || taus[i] > taus[i - 1]), ErrorKind::InvalidArgument,
            "taus must be positive and increasing");
    require(std::abs(values[i]) > 0, ErrorKind::ZeroSample, "zero sample in decay fit");
  }
  const double n = static_cast<double>(taus.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double x = std::log(taus[i]);
    const double y = std::log(std::abs(values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double r = std::log(std::abs(values[i])) - intercept - slope * std::log(taus[i]);
    ss += r * r;
  }
  AsymptoticFit fit;
  fit.exponent = slope;
  fit.constant = values.back() / std::pow(taus.back(), slope);
  fit.rms_residual = std::sqrt(ss / n);
  fit.tau_min = taus.front();
  fit.tau_max = taus.back();
  return fit;
}

std::vector<double> tau_ladder(double lo, double hi, int count) {
  require(lo > 0 && hi > lo && count >= 2, ErrorKind::InvalidArgument, "bad tau ladder");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

LocalExpansion LocalExpansion::constant_profiles(double alpha, double beta, double alpha0,
                                                 double beta0) {
  LocalExpansion le;
  le.alpha = alpha;
  le.beta = beta;
  le.alpha0 = alpha0;
  le.beta0 = beta0;
  le.gamma_beta = [](double) { return cplx(1.0); };
  le.rho0_profile = [](double) { return cplx(0.5); };
  le.V_profile = [](double) { return CVec2{1.0, 0.5}; };
  le.vtilde_profile = [](double) { return cplx(1.0); };
  return le;
}

bool BoundReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.pass; });
}

BoundReport general_bound_check(const LocalExpansion& le, const Sector& s, const EtaVector& eta,
                                const std::vector<double>& taus, double slack) {
  require(std::abs(le.alpha + 1) > 1e-12, ErrorKind::PreconditionViolated, "alpha = -1 excluded");
  const double n = 2;
  std::vector<cplx> grad_vals, pot_vals;
  for (double t : taus) {
    const EtaVector e = eta.with_tau(t);
    const CVec2 ev = e.vector();
    CornerIntegrand grad{le.alpha + le.beta, [&](double psi) {
                           return le.gamma_beta(psi) * dot(le.V_profile(psi), ev);
                         }};
    CornerIntegrand pot{le.alpha0 + le.beta0,
                        [&](double psi) { return le.rho0_profile(psi) * le.vtilde_profile(psi); }};
    grad_vals.push_back(corner_integral(s, grad, e));
    pot_vals.push_back(corner_integral(s, pot, e));
  }
  BoundReport rep;
  BoundRow g{"gradient", -(n + le.beta + le.alpha - 1), fit_decay(taus, grad_vals), false};
  g.pass = g.fit.exponent <= g.bound + slack;
  BoundRow p{"potential", -(n + le.beta0 + le.alpha0), fit_decay(taus, pot_vals), false};
  p.pass = p.fit.exponent <= p.bound + slack;
  rep.rows = {g, p};
  return rep;
}

}  // namespace cornerlab
