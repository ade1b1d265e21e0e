#include "cornerlab/cgo_solver.hpp"

#include <algorithm>

namespace cornerlab {

namespace {

double max_abs(const CArray& a) { return a.size() ? a.abs().maxCoeff() : 0.0; }

double l2(const CArray& a) { return std::sqrt(a.abs2().sum()); }

CArray to_complex(const RArray& a) { return a.cast<cplx>(); }

}  // namespace

ContrastPotential build_q(const Grid& g, const RArray& gamma, const RArray& rho, double k) {
  require(gamma.size() == g.size() && rho.size() == g.size(), ErrorKind::InvalidArgument,
          "coefficient arrays must match the grid");
  require(gamma.minCoeff() > 0, ErrorKind::EllipticityViolated, "gamma must stay positive");
  const RArray root = gamma.sqrt();
  const CArray lap = laplacian(to_complex(root - 1.0), g, Basis::Periodic);
  ContrastPotential out{g, lap / root.cast<cplx>() - k * k * (rho / gamma - 1.0).cast<cplx>(), k};

  const double peak = max_abs(out.q);
  if (peak > 0) {
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const Vec2 x = g.point(i, j);
        const double margin = g.L / 2 - std::max(std::abs(x.x), std::abs(x.y));
        if (margin < g.L / 4 && std::abs(out.q(g.index(i, j))) > 1e-10 * peak)
          fail(ErrorKind::SupportViolated, "q is not supported away from the box boundary");
      }
  }
  return out;
}

cplx faddeev_symbol(const EtaVector& eta, double xi1, double xi2) {
  const CVec2 e = eta.vector();
  return -(xi1 * xi1 + xi2 * xi2) + 2.0 * I * (e.x * xi1 + e.y * xi2);
}

CArray faddeev_apply(const CArray& f, const Grid& g, const EtaVector& eta) {
  auto symbol = [&](double a, double b) { return faddeev_symbol(eta, a, b); };
  const double smallest = min_symbol(g, Basis::Twisted, symbol);
  require(smallest >= 1e-8 * eta.tau * eta.tau, ErrorKind::SymbolTooSmall,
          "Faddeev symbol nearly vanishes on the grid");
  return apply_symbol(f, g, Basis::Twisted, [&](double a, double b) { return 1.0 / symbol(a, b); });
}

CArray faddeev_operator(const CArray& r, const Grid& g, const EtaVector& eta) {
  return apply_symbol(r, g, Basis::Twisted,
                      [&](double a, double b) { return faddeev_symbol(eta, a, b); });
}

CgoSolution solve_cgo(const ContrastPotential& q, const EtaVector& eta, double tol, int max_iter) {
  const Grid& g = q.grid;
  CgoSolution sol{eta, CArray::Zero(g.size()), 0, 0.0, {}};
  if (max_abs(q.q) == 0.0) {
    sol.iterations = 1;
    return sol;
  }
  int rising = 0;
  for (int it = 1; it <= max_iter; ++it) {
    CArray next = faddeev_apply(q.q * (1.0 + sol.r), g, eta);
    const double inc = l2(next - sol.r) / std::max(l2(next), 1e-300);
    sol.r = std::move(next);
    sol.iterations = it;
    sol.fixed_point_residual = inc;
    if (!sol.increments.empty() && inc >= sol.increments.back())
      ++rising;
    else
      rising = 0;
    sol.increments.push_back(inc);
    if (!std::isfinite(inc) || rising >= 5)
      fail(ErrorKind::NoContraction, "fixed-point increments stopped shrinking at tau " +
                                         std::to_string(eta.tau));
    if (inc <= tol) return sol;
  }
  fail(ErrorKind::NoConvergence, "CGO iteration cap reached");
}

double cgo_equation_residual(const ContrastPotential& q, const CgoSolution& sol) {
  const CArray rhs = q.q * (1.0 + sol.r);
  const double scale = l2(rhs);
  if (scale == 0.0) return l2(faddeev_operator(sol.r, q.grid, sol.eta));
  return l2(faddeev_operator(sol.r, q.grid, sol.eta) - rhs) / scale;
}

DriftField drift_field(const Grid& g, const RArray& gamma) {
  const RArray root = gamma.sqrt();
  const CArray s = to_complex(root - 1.0);
  const CArray inv = root.inverse().cast<cplx>();
  return {derivative(s, g, 0, Basis::Periodic) * inv, derivative(s, g, 1, Basis::Periodic) * inv};
}

CgoField cgo_field(const Grid& g, const RArray& gamma, const CgoSolution& sol) {
  const CArray inv_root = gamma.sqrt().inverse().cast<cplx>();
  const CArray per = inv_root - 1.0;       // periodic part of W
  const CArray tw = inv_root * sol.r;      // twisted part of W
  CgoField out{g, sol.eta, inv_root + tw, {}, {}};
  out.Wx = derivative(per, g, 0, Basis::Periodic) + derivative(tw, g, 0, Basis::Twisted);
  out.Wy = derivative(per, g, 1, Basis::Periodic) + derivative(tw, g, 1, Basis::Twisted);
  return out;
}

namespace {

// exp(-eta.x) div(gamma grad(P exp(eta.x))) + k^2 (rho - gamma) P for P in one basis.
CArray conjugated_operator(const CArray& P, const Grid& g, Basis basis, const CArray& gam,
                           const CArray& contrast, const CVec2& eta) {
  const CArray px = derivative(P, g, 0, basis);
  const CArray py = derivative(P, g, 1, basis);
  const CArray div = derivative(gam * px, g, 0, basis) + derivative(gam * py, g, 1, basis);
  const CArray gp = gam * P;
  const CArray drift = eta.x * derivative(gp, g, 0, basis) + eta.y * derivative(gp, g, 1, basis);
  return div + drift + gam * (eta.x * px + eta.y * py) + contrast * P;
}

}  // namespace

double cgo_pde_residual(const Grid& g, const RArray& gamma, const RArray& rho, double k,
                        const CgoField& w, double interior_radius) {
  const CArray gam = to_complex(gamma);
  const CArray contrast = to_complex(k * k * (rho - gamma));
  const CVec2 eta = w.eta.vector();
  const CArray inv_root = gamma.sqrt().inverse().cast<cplx>();
  const CArray per = inv_root - 1.0;
  const CArray tw = w.W - inv_root;

  // The constant 1: only eta.grad(gamma) and the contrast survive.
  const CArray gm1 = to_complex(gamma - 1.0);
  const CArray one = eta.x * derivative(gm1, g, 0, Basis::Periodic) +
                     eta.y * derivative(gm1, g, 1, Basis::Periodic) + contrast;
  const CArray total = one + conjugated_operator(per, g, Basis::Periodic, gam, contrast, eta) +
                       conjugated_operator(tw, g, Basis::Twisted, gam, contrast, eta);

  // Scale: size of the individual first-order terms, which cancel in the sum.
  const CArray scale_field =
      gam * (eta.x * w.Wx + eta.y * w.Wy).abs().cast<cplx>() + (contrast * w.W).abs().cast<cplx>();
  double num = 0, den = 0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      if (norm(g.point(i, j)) > interior_radius) continue;
      const auto id = g.index(i, j);
      num = std::max(num, std::abs(total(id)));
      den = std::max(den, std::abs(scale_field(id)));
    }
  return den > 0 ? num / den : num;
}

double gradient_identity_residual(const Grid& g, const RArray& gamma, const CgoSolution& sol,
                                  const CgoField& w) {
  const DriftField b = drift_field(g, gamma);
  const CArray inv_root = gamma.sqrt().inverse().cast<cplx>();
  const CVec2 eta = sol.eta.vector();
  const CArray rx = derivative(sol.r, g, 0, Basis::Twisted);
  const CArray ry = derivative(sol.r, g, 1, Basis::Twisted);
  const CArray ex = inv_root * (rx + (1.0 + sol.r) * (eta.x - b.bx));
  const CArray ey = inv_root * (ry + (1.0 + sol.r) * (eta.y - b.by));
  const CArray fx = w.Wx + eta.x * w.W;
  const CArray fy = w.Wy + eta.y * w.W;
  const double scale = std::max(max_abs(ex), max_abs(ey));
  return std::max(max_abs(fx - ex), max_abs(fy - ey)) / scale;
}

DecayReport residual_decay_report(const ContrastPotential& q, const Sector& s,
                                  const EtaVector& direction, const std::vector<double>& taus,
                                  double p, double slack) {
  DecayReport rep;
  rep.taus = taus;
  rep.bound = -2.0 / p + slack;
  for (double t : taus) {
    const CgoSolution sol = solve_cgo(q, direction.with_tau(t));
    rep.norms.push_back(lp_norm(sol.r, q.grid, p, [&](Vec2 x) { return sector_contains(s, x); }));
  }
  rep.degenerate = std::all_of(rep.norms.begin(), rep.norms.end(), [](double v) { return v == 0; });
  if (rep.degenerate) return rep;
  std::vector<cplx> vals(rep.norms.begin(), rep.norms.end());
  rep.fit = fit_decay(taus, vals);
  rep.pass = rep.fit->exponent <= rep.bound;
  return rep;
}

}  // namespace cornerlab
