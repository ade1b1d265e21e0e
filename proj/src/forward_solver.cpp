#include "cornerlab/forward_solver.hpp"

#include <algorithm>
#include <array>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/hankel.hpp>

#include "cornerlab/krylov.hpp"

namespace cornerlab {

namespace bm = boost::math;

int fft_size_at_least(int n) {
  for (int m = std::max(n, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

cplx truncated_kernel_symbol(double s, double k, double R) {
  const cplx h0 = bm::cyl_hankel_1(0, k * R);
  const cplx h1 = bm::cyl_hankel_1(1, k * R);
  if (std::abs(s - k) < 1e-8 * k) {
    // Removable singularity at s = k.
    return I * pi * R * R / 4.0 * (bm::cyl_bessel_j(0, k * R) * h0 + bm::cyl_bessel_j(1, k * R) * h1);
  }
  const double j0 = bm::cyl_bessel_j(0, s * R);
  const double j1 = bm::cyl_bessel_j(1, s * R);
  return (1.0 + I * pi * R / 2.0 * (s * j1 * h0 - k * j0 * h1)) / (s * s - k * k);
}

namespace {

struct Embedding {
  PatchGrid patch;
  int nb = 0;
  double Lb = 0.0;
  CArray symbol;  // truncated kernel on the big grid bins
  RArray xi1;
  RArray xi2;
};

Embedding make_embedding(const PatchGrid& patch, double k) {
  Embedding e;
  e.patch = patch;
  const double side = patch.n * patch.h;
  const double R = std::sqrt(2.0) * side + patch.h;
  e.nb = fft_size_at_least(static_cast<int>(std::ceil((R + side) / patch.h)) + 2);
  e.Lb = e.nb * patch.h;
  const Eigen::Index total = static_cast<Eigen::Index>(e.nb) * e.nb;
  e.symbol.resize(total);
  e.xi1.resize(total);
  e.xi2.resize(total);
  Grid big{e.nb, e.Lb};
  for (int j = 0; j < e.nb; ++j)
    for (int i = 0; i < e.nb; ++i) {
      const auto id = big.index(i, j);
      const double a = big.frequency(i);
      const double b = big.frequency(j);
      e.symbol(id) = truncated_kernel_symbol(std::hypot(a, b), k, R);
      // Drop the Nyquist row/column for first derivatives.
      e.xi1(id) = (2 * i == e.nb) ? 0.0 : a;
      e.xi2(id) = (2 * j == e.nb) ? 0.0 : b;
    }
  return e;
}

void scatter_into(const Embedding& e, const CArray& patch_values, CArray& big) {
  big.setZero(static_cast<Eigen::Index>(e.nb) * e.nb);
  const int n = e.patch.n;
  for (int j = 0; j < n; ++j)
    big.segment(static_cast<Eigen::Index>(j) * e.nb, n) = patch_values.segment(static_cast<Eigen::Index>(j) * n, n);
}

CArray gather_from(const Embedding& e, const CArray& big) {
  const int n = e.patch.n;
  CArray out(e.patch.size());
  for (int j = 0; j < n; ++j)
    out.segment(static_cast<Eigen::Index>(j) * n, n) = big.segment(static_cast<Eigen::Index>(j) * e.nb, n);
  return out;
}

struct Potentials {
  CArray u;
  CArray ux;
  CArray uy;
};

// k^2 G*(mc u) + div G*(ma v) and its gradient, on the patch.
Potentials volume_potentials(const Embedding& e, double k, const CArray& src_c, const CArray* src_ax,
                             const CArray* src_ay) {
  CArray work;
  scatter_into(e, src_c, work);
  fft_forward(work, e.nb);
  CArray spec = (k * k) * work;
  if (src_ax) {
    scatter_into(e, *src_ax, work);
    fft_forward(work, e.nb);
    spec += I * e.xi1.cast<cplx>() * work;
    scatter_into(e, *src_ay, work);
    fft_forward(work, e.nb);
    spec += I * e.xi2.cast<cplx>() * work;
  }
  spec *= e.symbol;
  Potentials p;
  work = spec;
  fft_backward(work, e.nb);
  p.u = gather_from(e, work);
  work = I * e.xi1.cast<cplx>() * spec;
  fft_backward(work, e.nb);
  p.ux = gather_from(e, work);
  work = I * e.xi2.cast<cplx>() * spec;
  fft_backward(work, e.nb);
  p.uy = gather_from(e, work);
  return p;
}

double cell_average(const std::function<double(Vec2)>& f, const std::function<double(Vec2)>& iface,
                    Vec2 centre, double h, int sub) {
  if (std::abs(iface(centre)) > 0.75 * h) return f(centre);
  double acc = 0;
  for (int b = 0; b < sub; ++b)
    for (int a = 0; a < sub; ++a)
      acc += f(centre + Vec2{((a + 0.5) / sub - 0.5) * h, ((b + 0.5) / sub - 0.5) * h});
  return acc / (sub * sub);
}

}  // namespace

ScatteringSolution solve_scattering(const MediumSpec& m, const IncidentField& f,
                                    const SolverOptions& opt) {
  const double k = wavenumber(f);
  require(k > 0, ErrorKind::InvalidArgument, "wavenumber must be positive");

  // Largest local wavenumber over the hull.
  const Vec2 lo = m.hull.lower_corner();
  const Vec2 hi = m.hull.upper_corner();
  double ratio = 1.0;
  for (int j = 0; j <= 64; ++j)
    for (int i = 0; i <= 64; ++i) {
      const Vec2 x{lo.x + (hi.x - lo.x) * i / 64, lo.y + (hi.y - lo.y) * j / 64};
      const double a = m.a(x);
      const double c = m.c(x);
      if (c > 0) ratio = std::max(ratio, c / a);
    }
  const double k_eff = k * std::sqrt(ratio);
  const double h = opt.h > 0 ? opt.h : 2 * pi / (k_eff * opt.points_per_wavelength);
  const double ppw = 2 * pi / (k_eff * h);
  require(ppw >= 10.0 - 1e-9, ErrorKind::ResolutionTooCoarse,
          "grid gives " + std::to_string(ppw) + " points per wavelength, need 10");

  // Odd refinement keeps every coarse node on the quadrature grid.
  int F = 1;
  if (opt.quadrature_ppw > ppw) {
    F = static_cast<int>(std::ceil(opt.quadrature_ppw / ppw - 1e-9));
    if (F % 2 == 0) ++F;
  }

  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
  // Extra margin so interpolation stencils stay centred over the support.
  const int n = static_cast<int>(std::ceil(extent / h)) + (F > 1 ? 7 : 3);
  const Vec2 mid = 0.5 * (lo + hi);
  PatchGrid patch{mid - Vec2{0.5 * (n - 1) * h, 0.5 * (n - 1) * h}, n, h};

  ScatteringSolution sol;
  sol.k = k;
  sol.incident = f;
  sol.grid = patch;
  sol.refinement = F;
  sol.ma.resize(patch.size());
  sol.mc.resize(patch.size());
  sol.u_in.resize(patch.size());
  CArray gx(patch.size()), gy(patch.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto id = patch.index(i, j);
      const Vec2 x = patch.point(i, j);
      sol.ma(id) = cell_average(m.a, m.interface, x, h, opt.supersample) - 1.0;
      sol.mc(id) = cell_average(m.c, m.interface, x, h, opt.supersample) - 1.0;
      sol.u_in(id) = evaluate(f, x);
      const CVec2 g = gradient(f, x);
      gx(id) = g.x;
      gy(id) = g.y;
    }

  const int nf = n * F;
  const double hf = h / F;
  const int centre = (F - 1) / 2;
  const PatchGrid fine{patch.origin - Vec2{centre * hf, centre * hf}, nf, hf};
  const int fine_sub = std::max(4, (opt.supersample + F - 1) / F);

  // Active quadrature nodes and their per-axis interpolation stencils.
  struct Axis {
    int start = 0;
    int nearest = 0;
    std::array<double, 6> w{};
  };
  std::vector<Axis> axis(nf);
  for (int I = 0; I < nf; ++I) {
    const double pos = (I - centre) / static_cast<double>(F);
    Axis& a = axis[I];
    a.nearest = std::clamp(static_cast<int>(std::lround(pos)), 0, n - 1);
    a.start = std::clamp(static_cast<int>(std::floor(pos)) - 2, 0, n - 6);
    for (int p = 0; p < 6; ++p) {
      double w = 1.0;
      for (int q = 0; q < 6; ++q)
        if (q != p) w *= (pos - (a.start + q)) / static_cast<double>(p - q);
      a.w[p] = w;
    }
  }
  struct Active {
    Eigen::Index fine_id;
    int I;
    int J;
    double mc;
    double ma;
  };
  std::vector<Active> active;
  if (F == 1) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto id = patch.index(i, j);
        if (sol.mc(id) != 0.0 || sol.ma(id) != 0.0) active.push_back({id, i, j, sol.mc(id), sol.ma(id)});
      }
  } else {
    for (int J = 0; J < nf; ++J)
      for (int I = 0; I < nf; ++I) {
        const Vec2 x = fine.point(I, J);
        const double ma = cell_average(m.a, m.interface, x, hf, fine_sub) - 1.0;
        const double mc = cell_average(m.c, m.interface, x, hf, fine_sub) - 1.0;
        if (mc != 0.0 || ma != 0.0) active.push_back({fine.index(I, J), I, J, mc, ma});
      }
  }
  auto interpolate = [&](const CArray& coarse, const Active& a) -> cplx {
    if (F == 1) return coarse(a.fine_id);
    const Axis& ax = axis[a.I];
    const Axis& ay = axis[a.J];
    cplx acc = 0.0;
    for (int q = 0; q < 6; ++q) {
      cplx row = 0.0;
      const Eigen::Index base = patch.index(ax.start, ay.start + q);
      for (int p = 0; p < 6; ++p) row += ax.w[p] * coarse(base + p);
      acc += ay.w[q] * row;
    }
    return acc;
  };
  auto nearest = [&](const CArray& coarse, const Active& a) -> cplx {
    return F == 1 ? coarse(a.fine_id) : coarse(patch.index(axis[a.I].nearest, axis[a.J].nearest));
  };
  auto restrict_to_coarse = [&](const CArray& values) -> CArray {
    if (F == 1) return values;
    CArray out(patch.size());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out(patch.index(i, j)) = values(fine.index(i * F + centre, j * F + centre));
    return out;
  };

  const Embedding emb = make_embedding(fine, k);
  bool with_a = false;
  for (const Active& a : active) with_a = with_a || a.ma != 0.0;
  const Eigen::Index N = patch.size();

  // Fine-grid potentials of the sources built from coarse (u, v).
  auto potentials = [&](const CArray& u, const CArray* vx, const CArray* vy) {
    CArray sc = CArray::Zero(fine.size());
    for (const Active& a : active) sc(a.fine_id) = a.mc * interpolate(u, a);
    if (!with_a) return volume_potentials(emb, k, sc, nullptr, nullptr);
    CArray sx = CArray::Zero(fine.size());
    CArray sy = CArray::Zero(fine.size());
    for (const Active& a : active) {
      sx(a.fine_id) = a.ma * nearest(*vx, a);
      sy(a.fine_id) = a.ma * nearest(*vy, a);
    }
    return volume_potentials(emb, k, sc, &sx, &sy);
  };

  Eigen::VectorXcd rhs(with_a ? 3 * N : N);
  rhs.head(N) = sol.u_in.matrix();
  if (with_a) {
    rhs.segment(N, N) = gx.matrix();
    rhs.segment(2 * N, N) = gy.matrix();
  }
  LinearOperator A = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    const CArray u = x.head(N).array();
    Eigen::VectorXcd y = x;
    if (with_a) {
      const CArray vx = x.segment(N, N).array();
      const CArray vy = x.segment(2 * N, N).array();
      const Potentials p = potentials(u, &vx, &vy);
      y.head(N) -= restrict_to_coarse(p.u).matrix();
      y.segment(N, N) -= restrict_to_coarse(p.ux).matrix();
      y.segment(2 * N, N) -= restrict_to_coarse(p.uy).matrix();
    } else {
      y.head(N) -= restrict_to_coarse(potentials(u, nullptr, nullptr).u).matrix();
    }
    return y;
  };
  const GmresResult res = gmres(A, rhs, opt.tol, opt.restart, opt.max_iter);
  require(res.converged, ErrorKind::NoConvergence,
          "GMRES stopped at relative residual " + std::to_string(res.residual));
  sol.solver_residual = res.residual;
  sol.iterations = res.iterations;

  sol.u_total = res.x.head(N).array();
  sol.u_scattered = sol.u_total - sol.u_in;
  sol.sources.reserve(active.size());
  if (with_a) {
    sol.ux = res.x.segment(N, N).array();
    sol.uy = res.x.segment(2 * N, N).array();
    for (const Active& a : active)
      sol.sources.push_back({fine.point(a.I, a.J), a.mc, a.ma, interpolate(sol.u_total, a),
                             {nearest(sol.ux, a), nearest(sol.uy, a)}});
  } else {
    const Potentials p = potentials(sol.u_total, nullptr, nullptr);
    sol.ux = gx + restrict_to_coarse(p.ux);
    sol.uy = gy + restrict_to_coarse(p.uy);
    for (const Active& a : active) {
      const Vec2 x = fine.point(a.I, a.J);
      sol.sources.push_back({x, a.mc, a.ma, interpolate(sol.u_total, a),
                             gradient(f, x) + CVec2{p.ux(a.fine_id), p.uy(a.fine_id)}});
    }
  }
  return sol;
}

void FarField::recompute_norms() {
  double acc = 0;
  sup_norm = 0;
  for (const cplx& v : values) {
    acc += std::norm(v);
    sup_norm = std::max(sup_norm, std::abs(v));
  }
  l2_norm = values.empty() ? 0.0 : std::sqrt(acc * 2 * pi / values.size());
}

cplx far_field_at(const ScatteringSolution& sol, double angle) {
  const Vec2 xhat = unit_vector(angle);
  const double k = sol.k;
  cplx acc = 0.0;
  for (const SourceNode& s : sol.sources) {
    const cplx src = k * k * s.mc * s.u + I * k * s.ma * (xhat.x * s.grad.x + xhat.y * s.grad.y);
    acc += src * std::exp(-I * (k * dot(xhat, s.p)));
  }
  const double hf = sol.grid.h / sol.refinement;
  return far_field_factor(k) * acc * hf * hf;
}

FarField far_field(const ScatteringSolution& sol, int n_angles) {
  require(n_angles >= 1, ErrorKind::InvalidArgument, "need at least one angle");
  FarField ff;
  ff.k = sol.k;
  for (int m = 0; m < n_angles; ++m) {
    const double t = 2 * pi * m / n_angles;
    ff.angles.push_back(t);
    ff.values.push_back(far_field_at(sol, t));
  }
  ff.recompute_norms();
  return ff;
}

FarField mie_far_field(const DiscData& disc, double k, Vec2 direction, int n_angles) {
  require(disc.a_in > 0, ErrorKind::InvalidArgument, "a_in must be positive");
  const double R = disc.radius;
  const double k1 = k * std::sqrt(disc.c_in / disc.a_in);
  const int M = static_cast<int>(std::ceil(std::max(k, k1) * R)) + 25;
  const double theta_d = std::atan2(direction.y, direction.x);
  // Per-mode coefficient of H_m(kr) exp(i m (theta - theta_d)).
  std::vector<cplx> b(2 * M + 1);
  for (int m = -M; m <= M; ++m) {
    const double jm = bm::cyl_bessel_j(m, k * R);
    const double djm = bm::cyl_bessel_j_prime(m, k * R);
    const cplx hm = bm::cyl_hankel_1(m, k * R);
    const cplx dhm = 0.5 * (bm::cyl_hankel_1(m - 1, k * R) - bm::cyl_hankel_1(m + 1, k * R));
    const double jm1 = bm::cyl_bessel_j(m, k1 * R);
    const double djm1 = bm::cyl_bessel_j_prime(m, k1 * R);
    const cplx im = std::pow(I, m);
    // i^m J + b H = a J1 and k (i^m J' + b H') = a_in k1 a J1'.
    const cplx lhs = k * dhm * jm1 - disc.a_in * k1 * djm1 * hm;
    b[m + M] = -im * (k * djm * jm1 - disc.a_in * k1 * djm1 * jm) / lhs;
  }
  FarField ff;
  ff.k = k;
  const cplx pref = std::sqrt(2 / (pi * k)) * std::exp(-I * (pi / 4));
  for (int a = 0; a < n_angles; ++a) {
    const double t = 2 * pi * a / n_angles;
    // Centre shift: the plane wave at the disc centre carries exp(i k d.c).
    const Vec2 xhat = unit_vector(t);
    const cplx shift = std::exp(I * (k * dot(direction - xhat, disc.center)));
    cplx acc = 0.0;
    for (int m = -M; m <= M; ++m) acc += b[m + M] * std::exp(I * (m * (t - theta_d - pi / 2)));
    ff.angles.push_back(t);
    ff.values.push_back(pref * shift * acc);
  }
  ff.recompute_norms();
  return ff;
}

double far_field_distance(const FarField& a, const FarField& b, bool relative) {
  require(a.values.size() == b.values.size(), ErrorKind::InvalidArgument, "angle grids differ");
  FarField d;
  for (std::size_t i = 0; i < a.values.size(); ++i) d.values.push_back(a.values[i] - b.values[i]);
  d.recompute_norms();
  if (!relative) return d.l2_norm;
  return b.l2_norm > 0 ? d.l2_norm / b.l2_norm : d.l2_norm;
}

double optical_theorem_defect(const FarField& f, Vec2 direction) {
  const double theta = std::atan2(direction.y, direction.x);
  // Forward value by trigonometric interpolation on the uniform grid.
  const int M = static_cast<int>(f.values.size());
  cplx forward = 0.0;
  for (int q = -(M / 2) + (M % 2 == 0 ? 1 : 0); q <= M / 2; ++q) {
    cplx coef = 0.0;
    for (int a = 0; a < M; ++a) coef += f.values[a] * std::exp(-I * (q * f.angles[a]));
    forward += coef / static_cast<double>(M) * std::exp(I * (q * theta));
  }
  const double lhs = f.l2_norm * f.l2_norm;
  const double rhs = -2 * std::sqrt(2 * pi / f.k) * std::real(std::exp(I * (pi / 4)) * forward);
  return lhs > 0 ? std::abs(lhs - rhs) / lhs : std::abs(rhs);
}

}  // namespace cornerlab
