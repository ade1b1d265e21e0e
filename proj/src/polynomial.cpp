#include "cornerlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cornerlab {

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

HomogeneousPoly::HomogeneousPoly(int degree, std::vector<cplx> coef)
    : degree_(degree), coef_(std::move(coef)) {
  if (static_cast<int>(coef_.size()) != degree + 1)
    throw std::invalid_argument("HomogeneousPoly: coefficient count must be degree + 1");
}

cplx HomogeneousPoly::operator()(Vec2 x) const {
  cplx s = 0.0;
  for (int a = 0; a <= degree_; ++a)
    s += coef_[a] * std::pow(x.x, a) * std::pow(x.y, degree_ - a);
  return s;
}

HomogeneousPoly HomogeneousPoly::dx() const {
  if (degree_ <= 0) return HomogeneousPoly(degree_ - 1);
  HomogeneousPoly out(degree_ - 1);
  for (int a = 1; a <= degree_; ++a) out[a - 1] = static_cast<double>(a) * coef_[a];
  return out;
}

HomogeneousPoly HomogeneousPoly::dy() const {
  if (degree_ <= 0) return HomogeneousPoly(degree_ - 1);
  HomogeneousPoly out(degree_ - 1);
  for (int a = 0; a < degree_; ++a) out[a] = static_cast<double>(degree_ - a) * coef_[a];
  return out;
}

HomogeneousPoly HomogeneousPoly::laplacian() const { return dx().dx() + dy().dy(); }

double HomogeneousPoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : coef_) m = std::max(m, std::abs(c));
  return m;
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& o) {
  if (o.degree_ < 0) return *this;
  if (degree_ < 0) return *this = o;
  if (degree_ != o.degree_) throw std::invalid_argument("HomogeneousPoly: degree mismatch");
  for (int a = 0; a <= degree_; ++a) coef_[a] += o.coef_[a];
  return *this;
}

HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b) {
  return a += cplx(-1.0) * b;
}

HomogeneousPoly operator*(cplx s, HomogeneousPoly a) {
  for (auto& c : a.coef_) c *= s;
  return a;
}

HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.degree_ < 0 || b.degree_ < 0) return HomogeneousPoly(-1);
  HomogeneousPoly out(a.degree_ + b.degree_);
  for (int i = 0; i <= a.degree_; ++i)
    for (int j = 0; j <= b.degree_; ++j) out.coef_[i + j] += a.coef_[i] * b.coef_[j];
  return out;
}

VectorPoly gradient(const HomogeneousPoly& p) { return {p.dx(), p.dy()}; }

HomogeneousPoly complex_power(int m, int sign) {
  HomogeneousPoly out(m);
  const cplx iy = cplx(0.0, sign);
  for (int a = 0; a <= m; ++a) out[a] = binomial(m, a) * std::pow(iy, m - a);
  return out;
}

HomogeneousPoly radial_power(int s) {
  HomogeneousPoly out(2 * s);
  for (int j = 0; j <= s; ++j) out[2 * j] = binomial(s, j);
  return out;
}

cplx HarmonicPolynomial2D::operator()(Vec2 x) const {
  const cplx z(x.x, x.y);
  return b_plus * std::pow(z, degree) + b_minus * std::pow(std::conj(z), degree);
}

CVec2 HarmonicPolynomial2D::gradient(Vec2 x) const {
  if (degree == 0) return {};
  const cplx z(x.x, x.y);
  const cplx zp = static_cast<double>(degree) * b_plus * std::pow(z, degree - 1);
  const cplx zm = static_cast<double>(degree) * b_minus * std::pow(std::conj(z), degree - 1);
  // d/dx z^N = N z^(N-1), d/dy z^N = i N z^(N-1); conjugate power picks up -i.
  return {zp + zm, I * zp - I * zm};
}

HomogeneousPoly HarmonicPolynomial2D::expand() const {
  return b_plus * complex_power(degree, +1) + b_minus * complex_power(degree, -1);
}

HarmonicPolynomial2D HarmonicPolynomial2D::from_poly(const HomogeneousPoly& p) {
  const int N = p.degree();
  if (N < 0) return {0, 0.0, 0.0};
  if (N == 0) return {0, p[0], 0.0};
  // x1^N coefficient: b+ + b-;  x1^(N-1) x2 coefficient: i N (b+ - b-).
  const cplx sum = p[N];
  const cplx diff = p[N - 1] / (I * static_cast<double>(N));
  return {N, 0.5 * (sum + diff), 0.5 * (sum - diff)};
}

}  // namespace cornerlab
