#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cornerlab/geometry.hpp"
#include "cornerlab/polynomial.hpp"

namespace cornerlab {

struct PlaneWave {
  double k = 1.0;
  Vec2 direction{1.0, 0.0};
};

// v_g(x) = int g(d) exp(i k x.d) ds_d with g sampled at angles 2 pi j / M.
struct Herglotz {
  double k = 1.0;
  std::vector<cplx> kernel;

  double angle(std::size_t j) const { return 2 * pi * static_cast<double>(j) / kernel.size(); }
  double kernel_norm() const;  // L2(S^1), trapezoid
};

// amplitude * J_m(k |x - center|) exp(i m theta), theta the polar angle about center.
struct BesselMode {
  double k = 1.0;
  int order = 0;
  cplx amplitude{1.0};
  Vec2 center{};
};

using IncidentField = std::variant<PlaneWave, Herglotz, BesselMode>;

double wavenumber(const IncidentField& f);
std::string describe(const IncidentField& f);
cplx evaluate(const IncidentField& f, Vec2 x);
CVec2 gradient(const IncidentField& f, Vec2 x);

// Regular cylindrical wave J_m(k|y|) exp(i m arg y) for any integer m.
cplx cylindrical_wave(int m, double k, Vec2 y);

// Kernel CSV rows: angle, Re g, Im g. Angles must form the uniform grid 2 pi j / M.
Herglotz read_herglotz_csv(const std::string& path, double k);

struct FieldExpansion {
  Vec2 center;
  double k = 1.0;
  std::vector<HomogeneousPoly> terms;        // v_j, j = 0..J
  std::vector<VectorPoly> gradient_terms;    // V_j, j = 0..J-1, degree-j part of grad v
  int N0 = 0;
  int N = 0;
  cplx v0{};
  VectorPoly Vlead;

  int order() const { return static_cast<int>(terms.size()) - 1; }
  // v_{N+1} as a harmonic polynomial, when it is harmonic to rel_tol.
  std::optional<HarmonicPolynomial2D> lead_potential(double rel_tol = 1e-10) const;
};

inline constexpr double jet_threshold = 1e-12;

// Builds the expansion from coefficient tables. When gradient_terms is empty it is taken
// as the gradient of the value table. Throws DegenerateJet when either table vanishes.
FieldExpansion make_expansion(Vec2 center, double k, std::vector<HomogeneousPoly> terms,
                              std::vector<VectorPoly> gradient_terms = {});

// Closed-form jets; the gradient table comes from the field's own gradient series.
FieldExpansion taylor_jet(const IncidentField& f, Vec2 center, int order);

struct CheckRow {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string note;
};

struct JetReport {
  std::vector<CheckRow> items;
  bool all_pass() const;
};

JetReport verify_jet_structure(const FieldExpansion& e, double k, double tol);

std::optional<int> class_E_membership(const IncidentField& f, const Sector& s, int order = 8);

// Cauchy data on a closed curve with arc-length weights.
struct BoundaryTrace {
  std::vector<Vec2> points;
  std::vector<Vec2> normals;
  std::vector<double> weights;
  std::vector<cplx> values;
  std::vector<cplx> normal_derivatives;
};

BoundaryTrace circle_trace(Vec2 center, double radius, int n_points);
void fill_trace(BoundaryTrace& t, const IncidentField& f);

struct HerglotzFit {
  Herglotz field;
  double misfit = 0.0;       // squared data term, relative to the target; absolute when the target is zero
  double kernel_norm = 0.0;  // L2(S^1)
};

// Tikhonov fit of (v, dv/dn) in sum w (|v|^2 + |dv/dn|^2 / k^2) with penalty lambda ||g||^2.
HerglotzFit herglotz_least_squares(const BoundaryTrace& target, double k, int grid_size,
                                   double lambda);

}  // namespace cornerlab
