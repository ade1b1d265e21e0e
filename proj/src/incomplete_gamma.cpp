#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>

#include "cornerlab/corner_asymptotics.hpp"

namespace cornerlab {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<130>>;
using Rule = boost::math::quadrature::gauss<Real, 30>;

// Smallest m with m b an integer, so t = u^m leaves a polynomial factor u^(m b - 1).
int substitution_power(double b) {
  for (int m = 1; m <= 64; ++m) {
    const double mb = m * b;
    if (std::abs(mb - std::round(mb)) < 1e-12 * std::max(1.0, mb)) return m;
  }
  fail(ErrorKind::PreconditionViolated, "b must be rational with denominator at most 64");
}

}  // namespace

IncompleteGammaCheck incomplete_gamma_check(double b, cplx mu, double s) {
  require(b > 0 && s > 0, ErrorKind::PreconditionViolated, "need b > 0 and s > 0");
  require(mu.real() > 0 && mu.real() > 2 * (b - 1) / s, ErrorKind::PreconditionViolated,
          "need Re mu > max(0, 2 (b - 1) / s)");

  const int m = substitution_power(b);
  const int poly = static_cast<int>(std::lround(m * b)) - 1;
  const Real mr = mu.real();
  const Real mi = mu.imag();
  const Real bb = b;
  const Real ss = s;

  // Closed form Gamma(b) mu^-b.
  const Real modulus = sqrt(mr * mr + mi * mi);
  const Real arg = atan2(mi, mr);
  const Real scale = boost::multiprecision::tgamma(bb) * exp(-bb * log(modulus));
  const Real closed_re = scale * cos(bb * arg);
  const Real closed_im = -scale * sin(bb * arg);

  // u in [0, s^(1/m)], integrand m u^(m b - 1) exp(-mu u^m). Panels keep |d/du (mu u^m)| L <= 1.
  const Real u_end = pow(ss, Real(1) / m);
  const double u_end_d = u_end.convert_to<double>();
  const int panels = std::max(
      4, static_cast<int>(std::ceil(std::abs(mu) * m * std::pow(u_end_d, m))));
  const Real L = u_end / panels;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  // exp(-Re mu t) below 1e-140 contributes nothing at this precision.
  const double t_cut = 330.0 / mu.real();

  Real sum_re = 0;
  Real sum_im = 0;
  for (int p = 0; p < panels; ++p) {
    const Real lo = p * L;
    const double t_lo = std::pow(lo.convert_to<double>(), m);
    if (t_lo > t_cut) break;
    const Real c = lo + L / 2;
    const Real h = L / 2;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int sign : {-1, 1}) {
        if (x[i] == 0 && sign == 1) continue;
        const Real u = c + sign * h * x[i];
        Real t = u;
        for (int j = 1; j < m; ++j) t *= u;
        Real factor = m * h * w[i] * exp(-mr * t);
        for (int j = 0; j < poly; ++j) factor *= u;
        const Real phase = mi * t;
        sum_re += factor * cos(phase);
        sum_im -= factor * sin(phase);
      }
    }
  }

  IncompleteGammaCheck out;
  out.numeric = {sum_re.convert_to<double>(), sum_im.convert_to<double>()};
  out.closed_form = {closed_re.convert_to<double>(), closed_im.convert_to<double>()};
  const Real dr = sum_re - closed_re;
  const Real di = sum_im - closed_im;
  out.error = sqrt(dr * dr + di * di).convert_to<double>();
  out.bound = 10 * std::exp(-s * mu.real() / 2);
  out.pass = out.error <= out.bound;
  return out;
}

}  // namespace cornerlab
