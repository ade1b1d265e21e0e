#pragma once

#include <Eigen/Core>
#include <functional>

#include "cornerlab/types.hpp"

namespace cornerlab {

using CArray = Eigen::ArrayXcd;
using RArray = Eigen::ArrayXd;

// Square periodic box [-L/2, L/2)^2 with n x n nodes x_i = -L/2 + i h; storage index j n + i
// (j along x2).
struct Grid {
  int n = 64;
  double L = 1.0;

  double h() const { return L / n; }
  double coord(int i) const { return -L / 2 + i * h(); }
  Vec2 point(int i, int j) const { return {coord(i), coord(j)}; }
  Eigen::Index index(int i, int j) const { return static_cast<Eigen::Index>(j) * n + i; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(n) * n; }
  // Signed integer frequency of FFT bin m.
  int wave_index(int m) const { return m < n / 2 ? m : m - n; }
  double frequency(int m) const { return 2 * pi * wave_index(m) / L; }
};

CArray sample(const Grid& g, const std::function<cplx(Vec2)>& f);
RArray sample_real(const Grid& g, const std::function<double(Vec2)>& f);

// In-place 2D transforms on n x n arrays. backward() includes the 1/n^2 factor.
void fft_forward(CArray& a, int n);
void fft_backward(CArray& a, int n);

// Fields in the twisted space are f(x) = p(x) exp(i xi0.x) with p periodic and
// xi0 = (pi/L, pi/L), so their frequencies sit on the half-integer lattice.
enum class Basis { Periodic, Twisted };

// Multiplies the spectrum by symbol(xi1, xi2), xi including the twist offset.
CArray apply_symbol(const CArray& f, const Grid& g, Basis basis,
                    const std::function<cplx(double, double)>& symbol);

CArray derivative(const CArray& f, const Grid& g, int axis, Basis basis);
CArray laplacian(const CArray& f, const Grid& g, Basis basis);

// Smallest |symbol| over the grid frequencies of the given basis.
double min_symbol(const Grid& g, Basis basis, const std::function<cplx(double, double)>& symbol);

// Midpoint-rule discrete L^p norm, optionally restricted by a mask.
double lp_norm(const CArray& f, const Grid& g, double p);
double lp_norm(const CArray& f, const Grid& g, double p, const std::function<bool(Vec2)>& mask);

}  // namespace cornerlab
