#include "cornerlab/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "cornerlab/quadrature.hpp"

namespace cornerlab {

GridData sample_on_grid(const FieldSampler& f, Vec2 origin, double h, int nx, int ny) {
  GridData d{origin, h, nx, ny, CArray(static_cast<Eigen::Index>(nx) * ny)};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      d.values(static_cast<Eigen::Index>(j) * nx + i) = f.value(origin + Vec2{i * h, j * h});
  return d;
}

namespace {

constexpr int max_stencil = 8;

struct Weights1D {
  int first = 0;
  std::array<double, max_stencil> value{};
  std::array<double, max_stencil> slope{};
};

// Lagrange basis on nodes 0..m-1 at local coordinate t, and its derivative.
Weights1D lagrange(double coord, int n, int m) {
  Weights1D w;
  const int base = (m % 2 == 0) ? static_cast<int>(std::floor(coord)) - (m / 2 - 1)
                                : static_cast<int>(std::lround(coord)) - (m - 1) / 2;
  w.first = std::clamp(base, 0, n - m);
  const double t = coord - w.first;
  for (int i = 0; i < m; ++i) {
    double li = 1.0;
    for (int k = 0; k < m; ++k)
      if (k != i) li *= (t - k) / (i - k);
    w.value[i] = li;
    double di = 0.0;
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      double p = 1.0 / (i - k);
      for (int j = 0; j < m; ++j)
        if (j != i && j != k) p *= (t - j) / (i - j);
      di += p;
    }
    w.slope[i] = di;
  }
  return w;
}

struct Stencil {
  Weights1D wx;
  Weights1D wy;
};

Stencil stencil_at(const GridData& d, Vec2 x, int m) {
  return {lagrange((x.x - d.origin.x) / d.h, d.nx, m), lagrange((x.y - d.origin.y) / d.h, d.ny, m)};
}

// Sum over the stencil with the chosen 1D weight arrays.
cplx contract(const GridData& d, const Stencil& s, int m, bool dx, bool dy) {
  cplx acc = 0.0;
  for (int b = 0; b < m; ++b) {
    const double wy = dy ? s.wy.slope[b] : s.wy.value[b];
    const Eigen::Index row = static_cast<Eigen::Index>(s.wy.first + b) * d.nx + s.wx.first;
    cplx line = 0.0;
    for (int a = 0; a < m; ++a) line += (dx ? s.wx.slope[a] : s.wx.value[a]) * d.values(row + a);
    acc += wy * line;
  }
  return acc;
}

void check_stencil(const GridData& d, int m) {
  require(m >= 2 && m <= max_stencil, ErrorKind::InvalidArgument, "stencil must be in 2..8");
  require(d.nx >= m && d.ny >= m, ErrorKind::InvalidArgument, "grid smaller than the stencil");
  require(d.values.size() == static_cast<Eigen::Index>(d.nx) * d.ny, ErrorKind::InvalidArgument,
          "grid data size mismatch");
}

}  // namespace

FieldSampler interpolated_field(GridData data, int stencil) {
  check_stencil(data, stencil);
  auto d = std::make_shared<const GridData>(std::move(data));
  const int m = stencil;
  return {[d, m](Vec2 x) { return contract(*d, stencil_at(*d, x, m), m, false, false); },
          [d, m](Vec2 x) {
            const Stencil s = stencil_at(*d, x, m);
            return CVec2{contract(*d, s, m, true, false) / d->h, contract(*d, s, m, false, true) / d->h};
          }};
}

FieldSampler interpolated_field(GridData values, GridData dx, GridData dy, int stencil) {
  check_stencil(values, stencil);
  check_stencil(dx, stencil);
  check_stencil(dy, stencil);
  auto v = std::make_shared<const GridData>(std::move(values));
  auto gx = std::make_shared<const GridData>(std::move(dx));
  auto gy = std::make_shared<const GridData>(std::move(dy));
  const int m = stencil;
  return {[v, m](Vec2 x) { return contract(*v, stencil_at(*v, x, m), m, false, false); },
          [gx, gy, m](Vec2 x) {
            return CVec2{contract(*gx, stencil_at(*gx, x, m), m, false, false),
                         contract(*gy, stencil_at(*gy, x, m), m, false, false)};
          }};
}

FieldSampler incident_sampler(const IncidentField& f) {
  return {[f](Vec2 x) { return evaluate(f, x); }, [f](Vec2 x) { return gradient(f, x); }};
}

FieldSampler total_field_sampler(const ScatteringSolution& sol, int stencil) {
  const PatchGrid& p = sol.grid;
  return interpolated_field(GridData{p.origin, p.h, p.n, p.n, sol.u_total},
                            GridData{p.origin, p.h, p.n, p.n, sol.ux},
                            GridData{p.origin, p.h, p.n, p.n, sol.uy}, stencil);
}

FieldSampler cgo_sampler(const CgoField& w, int stencil) {
  const Grid& g = w.grid;
  const Vec2 origin{-g.L / 2, -g.L / 2};
  const FieldSampler inner =
      interpolated_field(GridData{origin, g.h(), g.n, g.n, w.W}, GridData{origin, g.h(), g.n, g.n, w.Wx},
                         GridData{origin, g.h(), g.n, g.n, w.Wy}, stencil);
  const EtaVector eta = w.eta;
  const CVec2 ev = eta.vector();
  return {[inner, eta](Vec2 x) { return inner.value(x) * std::exp(eta.dot(x)); },
          [inner, eta, ev](Vec2 x) {
            const cplx W = inner.value(x);
            const CVec2 dW = inner.gradient(x);
            const cplx e = std::exp(eta.dot(x));
            return CVec2{(dW.x + ev.x * W) * e, (dW.y + ev.y * W) * e};
          }};
}

double SmoothConductivity::liouville_potential(Vec2 x) const {
  const double gam = gamma(x);
  const Vec2 dg = grad(x);
  return lap(x) / (2 * gam) - dot(dg, dg) / (4 * gam * gam);
}

SmoothConductivity gaussian_bump(Vec2 center, double width, double amplitude) {
  const double w2 = width * width;
  auto G = [=](Vec2 x) {
    const Vec2 r = x - center;
    return amplitude * std::exp(-dot(r, r) / w2);
  };
  return {G, [=](Vec2 x) { return (-2.0 / w2 * G(x)) * (x - center); },
          [=](Vec2 x) {
            const Vec2 r = x - center;
            return (4 * dot(r, r) / (w2 * w2) - 4 / w2) * G(x);
          }};
}

SmoothConductivity edge_flat_bump(const Sector& s, Vec2 center, double width, double amplitude) {
  const Vec2 e1 = s.first_edge();
  const Vec2 e2 = s.second_edge();
  const Vec2 n1{-e1.y, e1.x};  // inward for the first edge
  const Vec2 n2{e2.y, -e2.x};  // inward for the second edge
  const Vec2 v = s.vertex;
  const SmoothConductivity bump = gaussian_bump(center, width, amplitude);
  struct Parts {
    double P;
    Vec2 dP;
    double lapP;
  };
  auto poly = [=](Vec2 x) {
    const double l1 = dot(n1, x - v);
    const double l2 = dot(n2, x - v);
    const double L = l1 * l2;
    const Vec2 dL = l2 * n1 + l1 * n2;
    return Parts{L * L, (2 * L) * dL, 2 * dot(dL, dL) + 4 * L * dot(n1, n2)};
  };
  return {[=](Vec2 x) { return poly(x).P * bump.g(x); },
          [=](Vec2 x) {
            const Parts p = poly(x);
            return bump.g(x) * p.dP + p.P * bump.grad(x);
          },
          [=](Vec2 x) {
            const Parts p = poly(x);
            return bump.g(x) * p.lapP + 2 * dot(p.dP, bump.grad(x)) + p.P * bump.lap(x);
          }};
}

MediumSpec liouville_medium(const SmoothConductivity& s, double k, double kappa,
                            const ConvexPolygon& hull) {
  require(k > 0, ErrorKind::InvalidArgument, "wavenumber must be positive");
  MediumSpec m{"manufactured",
               hull,
               {},
               [s](Vec2 x) { return s.gamma(x); },
               [s, k, kappa](Vec2 x) { return s.gamma(x) * (kappa + s.liouville_potential(x) / (k * k)); },
               [hull](Vec2 x) { return hull.signed_distance(x); },
               1.0,
               false,
               std::nullopt};
  const Vec2 lo = hull.lower_corner();
  const Vec2 hi = hull.upper_corner();
  double amin = 1.0;
  for (int j = 0; j <= 32; ++j)
    for (int i = 0; i <= 32; ++i)
      amin = std::min(amin, s.gamma({lo.x + (hi.x - lo.x) * i / 32, lo.y + (hi.y - lo.y) * j / 32}));
  require(amin > 0, ErrorKind::EllipticityViolated, "gamma is not positive");
  m.a0 = amin;
  return m;
}

FieldSampler exponential_wave(CVec2 zeta) {
  return {[zeta](Vec2 x) { return std::exp(dot(zeta, x)); },
          [zeta](Vec2 x) { return std::exp(dot(zeta, x)) * zeta; }};
}

FieldSampler liouville_solution(const SmoothConductivity& s, CVec2 zeta) {
  return {[s, zeta](Vec2 x) { return std::exp(dot(zeta, x)) / std::sqrt(s.gamma(x)); },
          [s, zeta](Vec2 x) {
            const double gam = s.gamma(x);
            const cplx w = std::exp(dot(zeta, x)) / std::sqrt(gam);
            const Vec2 dg = s.grad(x);
            return CVec2{(zeta.x - dg.x / (2 * gam)) * w, (zeta.y - dg.y / (2 * gam)) * w};
          }};
}

CVec2 liouville_phase(double k, double kappa, double angle, double growth) {
  const Vec2 e = unit_vector(angle);
  const Vec2 ep = unit_vector(angle + pi / 2);
  const double b = std::sqrt(growth * growth + k * k * kappa);
  return {growth * e.x + I * b * ep.x, growth * e.y + I * b * ep.y};
}

double smooth_cutoff(Vec2 x, Vec2 c, double r1, double r2) {
  const double t = std::clamp((norm(x - c) - r1) / (r2 - r1), 0.0, 1.0);
  auto f = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
  return f(1 - t) / (f(1 - t) + f(t));
}

namespace {

struct BoundaryNode {
  Vec2 p;
  Vec2 normal;
  double w = 0.0;
};

struct Quadrature {
  std::vector<PlanarNode> volume;
  std::vector<BoundaryNode> boundary;  // every piece, for the weak form
  std::vector<BoundaryNode> identity_boundary;  // the pieces the identity integrates over
};

void append_segment(std::vector<BoundaryNode>& out, Vec2 a, Vec2 b, int panels) {
  std::vector<QuadNode> t;
  append_gauss(t, 0.0, 1.0, 20, panels);
  const double len = norm(b - a);
  const Vec2 tan = (1.0 / len) * (b - a);
  for (const auto& q : t) out.push_back({a + q.x * (b - a), {tan.y, -tan.x}, q.w * len});
}

Quadrature polygon_quadrature(const ConvexPolygon& omega, double k) {
  Quadrature q;
  const double d = omega.diameter();
  const double cell = std::min(d / 4, 3.0 / std::max(k, 1.0));
  q.volume = polygon_nodes(omega, 20, cell);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const Vec2 a = omega.vertex(i);
    const Vec2 b = omega.vertex(i + 1);
    append_segment(q.boundary, a, b, std::max(1, static_cast<int>(std::ceil(norm(b - a) / cell))));
  }
  q.identity_boundary = q.boundary;
  return q;
}

Quadrature sector_quadrature(const Sector& s, double k, const EtaVector* decay) {
  Quadrature q;
  const double eps = s.radius;
  const double rate = (decay ? decay->tau : 0.0) + k + 10.0 / eps;
  const auto radial = radial_nodes(eps, rate, 0.0, decay ? 40 : 12);
  const auto angular = angular_nodes(s.aperture, rate * eps);
  for (const auto& r : radial)
    for (const auto& a : angular) q.volume.push_back({s.point(r.x, a.x), r.w * a.w});
  for (const auto& a : angular) {
    const Vec2 xh = unit_vector(s.theta_ref + a.x);
    q.identity_boundary.push_back({s.vertex + eps * xh, xh, a.w * eps});
  }
  q.boundary = q.identity_boundary;
  const Vec2 e1 = s.first_edge();
  const Vec2 e2 = s.second_edge();
  for (const auto& r : edge_nodes(eps, rate, decay ? 40 : 12)) {
    q.boundary.push_back({s.vertex + r.x * e1, {e1.y, -e1.x}, r.w});
    q.boundary.push_back({s.vertex + r.x * e2, {-e2.y, e2.x}, r.w});
  }
  return q;
}

double weak_residual(const MediumSpec& m, double k, const FieldSampler& w, const Quadrature& q) {
  struct VolumeSample {
    double w;
    double a;
    double c;
    cplx value;
    CVec2 grad;
    Vec2 p;
  };
  std::vector<VolumeSample> vol;
  vol.reserve(q.volume.size());
  for (const auto& n : q.volume) vol.push_back({n.w, m.a(n.p), m.c(n.p), w.value(n.p), w.gradient(n.p), n.p});
  std::vector<cplx> flux;
  flux.reserve(q.boundary.size());
  for (const auto& b : q.boundary) flux.push_back(m.a(b.p) * dot(w.gradient(b.p), b.normal));

  double worst = 0.0;
  constexpr int directions = 8;
  for (int j = 0; j < directions; ++j) {
    const Vec2 th = unit_vector(2 * pi * j / directions + 0.1);
    cplx sum = 0.0;
    double scale = 0.0;
    for (const auto& s : vol) {
      const cplx phi = std::exp(I * (k * dot(th, s.p)));
      const cplx t1 = s.a * dot(s.grad, th) * (I * k) * phi;
      const cplx t2 = k * k * s.c * s.value * phi;
      sum += s.w * (t1 - t2);
      scale += s.w * (std::abs(t1) + std::abs(t2));
    }
    for (std::size_t i = 0; i < q.boundary.size(); ++i) {
      const cplx t = std::exp(I * (k * dot(th, q.boundary[i].p))) * flux[i];
      sum -= q.boundary[i].w * t;
      scale += q.boundary[i].w * std::abs(t);
    }
    if (scale > 0) worst = std::max(worst, std::abs(sum) / scale);
  }
  return worst;
}

IdentityReport evaluate_identity(const MediumSpec& m, double k, const FieldSampler& u,
                                 const FieldSampler& v, const FieldSampler& w, const Quadrature& q) {
  IdentityReport rep;
  rep.pde_residual = weak_residual(m, k, w, q);
  require(rep.pde_residual <= test_field_tolerance, ErrorKind::TestFieldInvalid,
          "test field PDE residual " + std::to_string(rep.pde_residual) + " exceeds 1e-6");
  double scale = 0.0;
  for (const auto& n : q.volume) {
    const double am1 = m.a(n.p) - 1.0;
    const double cm1 = m.c(n.p) - 1.0;
    if (am1 == 0.0 && cm1 == 0.0) continue;
    const cplx t1 = am1 * dot(v.gradient(n.p), w.gradient(n.p));
    const cplx t2 = k * k * cm1 * v.value(n.p) * w.value(n.p);
    rep.lhs += n.w * (t1 - t2);
    scale += n.w * (std::abs(t1) + std::abs(t2));
  }
  for (const auto& b : q.identity_boundary) {
    const double a = m.a(b.p);
    const cplx dw = dot(w.gradient(b.p), b.normal);
    const cplx du = dot(u.gradient(b.p), b.normal);
    const cplx dv = dot(v.gradient(b.p), b.normal);
    const cplx wv = w.value(b.p);
    const cplx t1 = a * dw * (v.value(b.p) - u.value(b.p));
    const cplx t2 = wv * (dv - a * du);
    rep.rhs += b.w * (t1 - t2);
    scale += b.w * (std::abs(t1) + std::abs(t2));
  }
  rep.boundary_term = rep.rhs;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.scale = scale;
  rep.relative = scale > 0 ? rep.residual / scale : 0.0;
  return rep;
}

}  // namespace

double weak_pde_residual(const MediumSpec& m, double k, const FieldSampler& w,
                         const ConvexPolygon& omega) {
  return weak_residual(m, k, w, polygon_quadrature(omega, k));
}

double weak_pde_residual(const MediumSpec& m, double k, const FieldSampler& w, const Sector& s,
                         const EtaVector* decay) {
  return weak_residual(m, k, w, sector_quadrature(s, k, decay));
}

IdentityReport transmission_identity_residual(const MediumSpec& m, double k, const FieldSampler& u,
                                              const FieldSampler& v, const FieldSampler& w,
                                              const ConvexPolygon& omega) {
  return evaluate_identity(m, k, u, v, w, polygon_quadrature(omega, k));
}

IdentityReport sector_identity_residual(const MediumSpec& m, double k, const FieldSampler& u,
                                        const FieldSampler& v, const FieldSampler& w,
                                        const Sector& s, const EtaVector* decay) {
  // Cauchy data of u and v must agree on both edges.
  double mismatch = 0.0;
  double size = 0.0;
  for (const Vec2 e : {s.first_edge(), s.second_edge()}) {
    const Vec2 nrm{e.y, -e.x};
    for (int i = 1; i <= 8; ++i) {
      const Vec2 x = s.vertex + (s.radius * i / 8.0) * e;
      const cplx dv = dot(v.gradient(x), nrm);
      const cplx du = m.a(x) * dot(u.gradient(x), nrm);
      mismatch = std::max({mismatch, std::abs(u.value(x) - v.value(x)), std::abs(du - dv)});
      size = std::max({size, std::abs(v.value(x)), std::abs(dv)});
    }
  }
  require(mismatch <= 1e-6 * std::max(size, 1e-300), ErrorKind::PreconditionViolated,
          "u and v do not share Cauchy data on the sector edges");
  return evaluate_identity(m, k, u, v, w, sector_quadrature(s, k, decay));
}

}  // namespace cornerlab
