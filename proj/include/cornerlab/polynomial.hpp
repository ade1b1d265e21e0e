#pragma once

#include <algorithm>
#include <vector>

#include "cornerlab/types.hpp"

namespace cornerlab {

// Homogeneous polynomial of one degree: sum_a coef[a] x1^a x2^(degree - a).
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  explicit HomogeneousPoly(int degree) : degree_(degree), coef_(degree < 0 ? 0 : degree + 1) {}
  HomogeneousPoly(int degree, std::vector<cplx> coef);

  int degree() const { return degree_; }
  const std::vector<cplx>& coef() const { return coef_; }
  cplx& operator[](int a) { return coef_[a]; }
  cplx operator[](int a) const { return coef_[a]; }

  cplx operator()(Vec2 x) const;
  HomogeneousPoly dx() const;
  HomogeneousPoly dy() const;
  HomogeneousPoly laplacian() const;
  double max_abs() const;  // 0 for the empty polynomial

  HomogeneousPoly& operator+=(const HomogeneousPoly& o);
  friend HomogeneousPoly operator+(HomogeneousPoly a, const HomogeneousPoly& b) { return a += b; }
  friend HomogeneousPoly operator-(HomogeneousPoly a, const HomogeneousPoly& b);
  friend HomogeneousPoly operator*(cplx s, HomogeneousPoly a);
  friend HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b);

 private:
  int degree_ = -1;  // -1 is the zero polynomial with no degree
  std::vector<cplx> coef_;
};

struct VectorPoly {
  HomogeneousPoly x;
  HomogeneousPoly y;

  int degree() const { return std::max(x.degree(), y.degree()); }
  CVec2 operator()(Vec2 p) const { return {x(p), y(p)}; }
  HomogeneousPoly divergence() const { return x.dx() + y.dy(); }
  HomogeneousPoly curl() const { return y.dx() - x.dy(); }
  double max_abs() const { return std::max(x.max_abs(), y.max_abs()); }
};

VectorPoly gradient(const HomogeneousPoly& p);

// b_plus (x1 + i x2)^N + b_minus (x1 - i x2)^N. For N = 0 the value is b_plus + b_minus.
struct HarmonicPolynomial2D {
  int degree = 0;
  cplx b_plus{};
  cplx b_minus{};

  cplx operator()(Vec2 x) const;
  CVec2 gradient(Vec2 x) const;
  HomogeneousPoly expand() const;
  bool is_zero() const { return b_plus == 0.0 && b_minus == 0.0; }

  // Projection onto the two circular harmonics, read off the x1^N and x1^(N-1) x2 coefficients.
  // Exact when p is harmonic.
  static HarmonicPolynomial2D from_poly(const HomogeneousPoly& p);
};

// (x1 + i x2)^m (sign = +1) or (x1 - i x2)^m (sign = -1).
HomogeneousPoly complex_power(int m, int sign);
// (x1^2 + x2^2)^s.
HomogeneousPoly radial_power(int s);

double binomial(int n, int k);
double factorial(int n);

}  // namespace cornerlab
