#include "cornerlab/experiments.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace cornerlab {

namespace bm = boost::math;

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.asserted || r.pass; });
}

void Report::append(const Report& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  seconds += other.seconds;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

ReportRow at_most(std::string check, std::string label, double value, double threshold,
                  std::string note = {}) {
  return {std::move(check), std::move(label), value, threshold, value <= threshold, true, std::move(note)};
}

ReportRow at_least(std::string check, std::string label, double value, double threshold,
                   std::string note = {}) {
  return {std::move(check), std::move(label), value, threshold, value >= threshold, true, std::move(note)};
}

ReportRow info(std::string check, std::string label, double value, std::string note = {}) {
  return {std::move(check), std::move(label), value, 0.0, true, false, std::move(note)};
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

// ---------------------------------------------------------------------------------------------

Report incomplete_gamma_study() {
  Report rep{"incomplete_gamma", {}, 0.0};
  for (double b : {0.5, 1.0, 2.0, 3.5})
    for (double re : {50.0, 100.0, 500.0})
      for (cplx mu : {cplx(re, 0.0), cplx(re, re)}) {
        const IncompleteGammaCheck c = incomplete_gamma_check(b, mu, 1.0);
        std::ostringstream label;
        label << "b=" << b << " mu=" << mu.real() << (mu.imag() >= 0 ? "+" : "") << mu.imag() << "i";
        rep.add(at_most("incomplete_gamma_error", label.str(), c.error, c.bound));
      }
  return rep;
}

Report c1_constant_study(double tau) {
  Report rep{"c1_constant", {}, 0.0};
  const std::vector<double> apertures{pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6};
  const std::vector<double> offsets{-0.6, -0.3, 0.0, 0.3, 0.6};
  for (std::size_t i = 0; i < apertures.size(); ++i)
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const double psi0 = apertures[i];
      const double phi = psi0 / 2 + offsets[j] * (pi / 2 - psi0 / 2);
      const int branch = (i + j) % 2 ? -1 : 1;
      const Sector s = Sector::make({0, 0}, 0.0, psi0, 1.0);
      const EtaVector eta = EtaVector::make(tau, phi, branch);
      const cplx C1 = c1_constant(psi0, eta.local_to(s));
      const cplx I0 = corner_integral(s, {0.0, [](double) { return cplx(1.0); }}, eta);
      const std::string label = "psi0=" + fmt(psi0) + " phi=" + fmt(phi) + " s=" + std::to_string(branch);
      rep.add(at_least("c1_nonzero", label, std::abs(C1), 1e-12));
      rep.add(at_most("c1_vs_quadrature", label, std::abs(tau * tau * I0 - C1) / std::abs(C1), 1e-4));
    }
  return rep;
}

Report exceptional_decay_study() {
  Report rep{"exceptional_decay", {}, 0.0};
  // Wide apertures decay slowly along the bisector, so the ladder starts where the truncation
  // of the sector at radius 1 is invisible.
  const std::vector<double> taus = tau_ladder(60.0, 600.0, 8);
  const double tau_check = 300.0;
  auto run = [&](double psi0, int N) {
    const Sector s = Sector::make({0, 0}, 0.0, psi0, 1.0);
    const HarmonicPolynomial2D pot{N + 1, 1.0, cplx(0.5, -0.3)};
    const EtaVector base = EtaVector::make(tau_check, psi0 / 2, 1);
    std::vector<cplx> vals;
    for (double t : taus) {
      const EtaVector e = base.with_tau(t);
      const CVec2 ev = e.vector();
      vals.push_back(corner_integral(
          s, {static_cast<double>(N), [&](double psi) { return dot(pot.gradient(unit_vector(psi)), ev); }}, e));
    }
    const CVec2 ev = base.vector();
    const cplx at = corner_integral(
        s, {static_cast<double>(N), [&](double psi) { return dot(pot.gradient(unit_vector(psi)), ev); }}, base);
    return std::tuple{fit_decay(taus, vals), at * std::pow(tau_check, N + 1), c0_constant(pot, psi0, base)};
  };

  for (int N = 0; N <= 3; ++N) {
    std::vector<double> prefactors;
    for (double psi0 : {0.9, 1.3, 2.0, 2.5}) {
      if (exceptional_angle(psi0, N)) continue;
      const auto [fit, scaled, C0] = run(psi0, N);
      const std::string label = "N=" + std::to_string(N) + " psi0=" + fmt(psi0);
      rep.add(at_most("decay_exponent_error", label, std::abs(fit.exponent - (1.0 - 2 - N)), 0.05,
                      "fitted " + fmt(fit.exponent)));
      rep.add(at_most("c0_vs_quadrature", label, std::abs(scaled - C0) / std::abs(C0), 1e-3));
      prefactors.push_back(std::abs(scaled));
    }
    const double med = median(prefactors);
    for (int l = 1; l <= N; ++l) {
      const double psi0 = l * pi / (N + 1);
      const auto [fit, scaled, C0] = run(psi0, N);
      const std::string label = "N=" + std::to_string(N) + " psi0=" + std::to_string(l) + "pi/" +
                                std::to_string(N + 1);
      rep.add(at_most("exceptional_prefactor_ratio", label, std::abs(scaled) / med, 1e-3,
                      "closed form |C0| = " + fmt(std::abs(C0))));
    }
  }
  return rep;
}

namespace {

LinearGradient hessian_gradient(double h11, double h12, double h22) {
  return {{cplx(h11, -h12) / 2.0, cplx(h12, -h22) / 2.0}, {cplx(h11, h12) / 2.0, cplx(h12, h22) / 2.0}};
}

}  // namespace

Report ctilde_dichotomy_study(int directions) {
  Report rep{"ctilde_dichotomy", {}, 0.0};
  const double k = 1.0;
  const cplx v0 = 1.0;
  // Hessian of a Helmholtz jet: trace = -k^2 v0.
  const LinearGradient V = hessian_gradient(-0.4, 0.3, -0.6);
  for (double psi0 : {pi / 3, pi / 2, 2.0})
    for (double rho0 : {0.0, 0.5})
      for (double gamma0 : {0.3, 1.0}) {
        double best = 0.0;
        for (int branch : {1, -1})
          for (int j = 0; j < directions; ++j) {
            const EtaVector eta = EtaVector::make(1.0, 2 * pi * j / directions, branch);
            best = std::max(best, std::abs(ctilde_constants(V, v0, gamma0, rho0, k, psi0, eta).c1));
          }
        const std::string label = "psi0=" + fmt(psi0) + " rho0=" + fmt(rho0) + " gamma0=" + fmt(gamma0);
        const bool degenerate = std::abs(psi0 - pi / 2) < 1e-12 && rho0 == 0.0;
        if (degenerate)
          rep.add(at_most("ctilde1_degenerate_max", label, best, 1e-10));
        else
          rep.add(at_least("ctilde1_direction_search", label, best, 1e-6));
      }
  // The printed and moment-based C~0 disagree; recorded, not asserted.
  const EtaVector eta = EtaVector::make(1.0, pi / 4, 1);
  const CTilde printed = ctilde_constants(V, v0, 1.0, 0.0, k, pi / 2, eta);
  const CTilde direct = ctilde_constants_direct(V, v0, 1.0, 0.0, k, pi / 2, eta);
  rep.add(info("ctilde0_printed_minus_direct", "psi0=pi/2 phi=pi/4", std::abs(printed.c0 - direct.c0),
               "moment formula is the one matching quadrature"));
  return rep;
}

Report general_bounds_study() {
  Report rep{"general_bounds", {}, 0.0};
  const double psi0 = 1.2;
  const Sector s = Sector::make({0, 0}, 0.0, psi0, 1.0);
  const EtaVector eta = EtaVector::make(20.0, psi0 / 2, 1);
  const std::vector<double> taus = tau_ladder(20.0, 300.0, 8);
  for (int alpha = 0; alpha <= 2; ++alpha)
    for (int beta = 0; beta <= 2; ++beta) {
      const LocalExpansion le = LocalExpansion::constant_profiles(alpha, beta, alpha, beta);
      const BoundReport b = general_bound_check(le, s, eta, taus);
      for (const BoundRow& row : b.rows) {
        ReportRow r = at_most(row.term + "_exponent", "alpha=" + std::to_string(alpha) + " beta=" +
                                                          std::to_string(beta),
                              row.fit.exponent, row.bound + 0.05);
        r.pass = row.pass;
        r.note = "bound " + fmt(row.bound);
        rep.add(r);
      }
    }
  return rep;
}

Report asymptotics_report(const AsymptoticsOptions& opt) {
  Report rep{"asymptotics", {}, 0.0};
  if (opt.incomplete_gamma) rep.append(incomplete_gamma_study());
  if (opt.c1) rep.append(c1_constant_study());
  if (opt.exceptional) rep.append(exceptional_decay_study());
  if (opt.ctilde) rep.append(ctilde_dichotomy_study());
  if (opt.bounds) rep.append(general_bounds_study());
  return rep;
}

// ---------------------------------------------------------------------------------------------

Report cgo_study(const CgoStudyOptions& opt) {
  Report rep{"cgo", {}, 0.0};
  const Grid g{opt.n, opt.L};
  const double k = opt.k;

  // Manufactured: f = (Lap + 2 eta.grad) G for a Gaussian G.
  {
    const EtaVector eta = EtaVector::make(80.0, 0.3, 1);
    const CVec2 ev = eta.vector();
    const double w2 = 0.8;
    const CArray G = sample(g, [&](Vec2 x) { return cplx(std::exp(-dot(x, x) / w2)); });
    const CArray f = sample(g, [&](Vec2 x) {
      const double r2 = dot(x, x);
      const double e = std::exp(-r2 / w2);
      const cplx lap = (4 * r2 / (w2 * w2) - 4 / w2) * e;
      return lap + 2.0 * (ev.x * (-2 * x.x / w2 * e) + ev.y * (-2 * x.y / w2 * e));
    });
    const CArray r = faddeev_apply(f, g, eta);
    rep.add(at_most("manufactured_recovery", "gaussian tau=80", (r - G).abs().maxCoeff() / G.abs().maxCoeff(), 1e-8));
  }

  auto bump = [](Vec2 x, Vec2 c, double w2) { return std::exp(-dot(x - c, x - c) / w2); };
  const RArray gamma = sample_real(g, [&](Vec2 x) { return 1 + 0.3 * bump(x, {0.2, 0.0}, 0.36); });
  const RArray rho = sample_real(g, [&](Vec2 x) { return 1 + 0.5 * bump(x, {0.0, 0.3}, 0.36); });
  const ContrastPotential q = build_q(g, gamma, rho, k);

  for (double tau : {opt.tau_min, opt.tau_max}) {
    const EtaVector eta = EtaVector::make(tau, 0.25 * pi, 1);
    const CgoSolution sol = solve_cgo(q, eta);
    const CgoField w = cgo_field(g, gamma, sol);
    const std::string label = "tau=" + fmt(tau);
    rep.add(at_most("operator_identity", label, cgo_equation_residual(q, sol), 1e-8));
    rep.add(at_most("full_pde_residual", label, cgo_pde_residual(g, gamma, rho, k, w, opt.L / 4), 1e-6));
    rep.add(at_most("gradient_identity", label, gradient_identity_residual(g, gamma, sol, w), 1e-8));
  }

  const Sector s = Sector::make({-0.6, -0.6}, 0.0, pi / 2, 1.5);
  const EtaVector dir = EtaVector::make(opt.tau_min, pi / 4, 1);
  const auto taus = tau_ladder(opt.tau_min, opt.tau_max, opt.ladder);
  for (double p : {2.0, 4.0}) {
    const DecayReport d = residual_decay_report(q, s, dir, taus, p);
    const double exponent = d.fit ? d.fit->exponent : 0.0;
    rep.add(at_most("residual_decay_exponent", "p=" + fmt(p), exponent, d.bound,
                    d.degenerate ? "degenerate" : ""));
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

Report mie_study(const MieStudyOptions& opt) {
  Report rep{"mie", {}, 0.0};
  MediumConfig cfg;
  cfg.kind = "disc";
  cfg.radius = opt.radius;
  cfg.a_in = opt.a_in;
  cfg.c_in = opt.c_in;
  const MediumSpec m = assemble_medium(cfg);
  const Vec2 d{1.0, 0.0};
  const PlaneWave pw{opt.k, d};

  const FarField mie = mie_far_field(*m.disc, opt.k, d, opt.n_angles);
  for (double level : opt.series_ppw) {
    SolverOptions at;
    at.points_per_wavelength = level;
    const FarField ff = far_field(solve_scattering(m, pw, at), opt.n_angles);
    rep.add(at_most("far_field_vs_series", "ppw=" + fmt(level), far_field_distance(ff, mie), 1e-3));
  }

  SolverOptions so;
  so.points_per_wavelength = opt.points_per_wavelength;
  const FarField ff = far_field(solve_scattering(m, pw, so), opt.n_angles);
  rep.add(at_most("optical_theorem", "numerical far field", optical_theorem_defect(ff, d), 0.02));
  rep.add(at_most("optical_theorem", "series far field", optical_theorem_defect(mie, d), 1e-8));

  // The plain cell-centred discretization, without refined source quadrature, halving h.
  std::vector<FarField> plain;
  for (double scale : {0.5, 1.0, 2.0}) {
    SolverOptions p = so;
    p.quadrature_ppw = 0.0;
    p.points_per_wavelength = 2 * opt.points_per_wavelength * scale;
    plain.push_back(far_field(solve_scattering(m, pw, p), opt.n_angles));
  }
  const double d12 = far_field_distance(plain[0], plain[1], false);
  const double d23 = far_field_distance(plain[1], plain[2], false);
  rep.add(at_least("self_convergence_factor", "plain grid, h -> h/2", d12 / d23, 2.0));

  // Reciprocity: F(theta; d) = F(-d; -theta).
  {
    const double th = 1.1;
    const double ph = 0.4;
    const ScatteringSolution a = solve_scattering(m, PlaneWave{opt.k, unit_vector(ph)}, so);
    const ScatteringSolution b = solve_scattering(m, PlaneWave{opt.k, unit_vector(th + pi)}, so);
    const cplx fa = far_field_at(a, th);
    const cplx fb = far_field_at(b, ph + pi);
    rep.add(at_most("reciprocity", "theta=1.1 phi=0.4", std::abs(fa - fb) / std::abs(fa), 1e-6));
  }

  const MediumSpec vac = MediumSpec::vacuum(m.hull);
  const ScatteringSolution z = solve_scattering(vac, pw, so);
  rep.add(at_most("zero_contrast_scattered", "vacuum", z.u_scattered.abs().maxCoeff(), 10 * so.tol));
  return rep;
}

// ---------------------------------------------------------------------------------------------

Report identity_study() {
  Report rep{"identities", {}, 0.0};
  const double k = 2.0;

  // Whole-domain identity on manufactured Liouville data sampled on grids.
  {
    const SmoothConductivity gam = gaussian_bump({0.1, 0.05}, 0.5, 0.4);
    const ConvexPolygon omega = ConvexPolygon::regular(5, {0, 0}, 0.8, 0.2);
    const MediumSpec m = liouville_medium(gam, k, 1.0, omega);
    const FieldSampler u = liouville_solution(gam, liouville_phase(k, 1.0, 0.3, 0.5));
    const FieldSampler w = liouville_solution(gam, liouville_phase(k, 1.0, 2.0, 0.8));
    const FieldSampler v = exponential_wave(liouville_phase(k, 1.0, 1.0, 0.0));
    std::vector<double> hs{0.08, 0.04, 0.02};
    std::vector<double> res;
    for (double h : hs) {
      const int n = static_cast<int>(std::ceil(2.0 / h)) + 1;
      const Vec2 o{-1.0, -1.0};
      const IdentityReport r = transmission_identity_residual(
          m, k, interpolated_field(sample_on_grid(u, o, h, n, n)),
          interpolated_field(sample_on_grid(v, o, h, n, n)),
          interpolated_field(sample_on_grid(w, o, h, n, n)), omega);
      res.push_back(r.relative);
      rep.add(info("domain_identity_residual", "h=" + fmt(h), r.relative));
    }
    rep.add(at_most("domain_identity_residual_finest", "h=" + fmt(hs.back()), res.back(), 1e-5));
    for (std::size_t i = 1; i < hs.size(); ++i) {
      const double order = std::log(res[i - 1] / res[i]) / std::log(hs[i - 1] / hs[i]);
      rep.add(at_least("domain_identity_order", "h=" + fmt(hs[i - 1]) + "->" + fmt(hs[i]), order, 2.0));
    }
    // Zero contrast: both sides vanish.
    const MediumSpec vac = MediumSpec::vacuum(omega);
    const FieldSampler pw = incident_sampler(PlaneWave{k, unit_vector(0.7)});
    const IdentityReport z = transmission_identity_residual(vac, k, pw, pw, pw, omega);
    rep.add(at_most("zero_contrast_identity", "plane waves", std::abs(z.lhs) + std::abs(z.rhs), 1e-14));
  }

  // Corner identity with a CGO test field.
  {
    const double eps = 0.25;
    const Sector s = Sector::make({0, 0}, 0.0, pi / 2, eps);
    const SmoothConductivity gam = edge_flat_bump(s, {0.25, 0.25}, 0.3, 40.0);
    const ConvexPolygon hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const MediumSpec m = liouville_medium(gam, k, 1.0, hull);
    const CVec2 zeta = liouville_phase(k, 1.0, 0.7, 0.0);
    const FieldSampler u = liouville_solution(gam, zeta);
    const FieldSampler v = exponential_wave(zeta);
    const Grid g{512, 16.0};
    const RArray G = sample_real(g, [&](Vec2 x) { return gam.gamma(x); });
    // The CGO equation carries k^2 (rho - gamma); rho is chosen so that this equals k^2 c near
    // the corner and the contrast stays compactly supported.
    const RArray R = sample_real(g, [&](Vec2 x) { return gam.gamma(x) + smooth_cutoff(x, {0, 0}, 0.45, 1.3) * m.c(x); });
    const ContrastPotential q = build_q(g, G, R, k);
    const double delta = std::cos(pi / 4);
    std::vector<double> boundary;
    for (double tau : {100.0, 200.0}) {
      const EtaVector eta = EtaVector::make(tau, pi / 4, 1);
      const CgoSolution sol = solve_cgo(q, eta);
      const FieldSampler w = cgo_sampler(cgo_field(g, G, sol));
      const IdentityReport r = sector_identity_residual(m, k, u, v, w, s, &eta);
      rep.add(at_most("corner_identity_residual", "tau=" + fmt(tau), r.relative, 1e-5));
      rep.add(info("corner_boundary_term", "tau=" + fmt(tau), std::abs(r.boundary_term)));
      boundary.push_back(std::abs(r.boundary_term));
    }
    // O(tau e^{-delta tau eps}) predicts a ratio 2 e^{-100 delta eps}; allow a factor 2.
    const double predicted = 2 * std::exp(-100 * delta * eps);
    rep.add(at_most("boundary_decay_ratio", "tau 100 -> 200", boundary[1] / boundary[0], 2 * predicted));
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

bool corner_certified(const CornerSpec& c, const FieldExpansion& jet, const Sector& s) {
  const bool potential = c.rho0 != 0.0;
  if (potential && c.gamma_order >= 2.0) return true;
  if (potential && c.gamma_order >= 1.0 && jet.N0 == jet.N) return true;
  if (c.gamma_order == 0.0 && c.gamma0 != 0.0) return !exceptional_angle(s.aperture, jet.N, 1e-6);
  return false;
}

bool SweepResult::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const SweepVerdict& v) { return v.pass; });
}

namespace {

std::string contrast_kind(const std::vector<CornerSpec>& corners) {
  bool pot = false;
  bool cond = false;
  for (const auto& c : corners) {
    pot = pot || c.rho0 != 0.0;
    cond = cond || (c.gamma_order == 0.0 && c.gamma0 != 0.0);
  }
  if (pot && cond) return "both";
  if (cond) return "conductivity jump";
  if (pot) return "potential jump";
  return "none";
}

}  // namespace

SweepResult corner_scattering_sweep(const std::vector<SweepCase>& cases,
                                    const std::vector<IncidentField>& incidents,
                                    const std::vector<double>& grid_levels, int n_angles, double tol,
                                    int jobs) {
  require(grid_levels.size() >= 2, ErrorKind::InvalidArgument, "need at least two grid levels");
  require(!incidents.empty(), ErrorKind::InvalidArgument, "need at least one incident field");
  std::vector<MediumSpec> media;
  for (const SweepCase& sc : cases) media.push_back(assemble_medium(sc.medium));

  // One job per (case, incident, level) plus one zero-contrast control per case.
  struct Job {
    std::size_t medium;
    std::optional<std::size_t> incident;  // empty for the control
    double h;
    double l2 = 0.0;
    double sup = 0.0;
    std::string error;
  };
  std::vector<Job> work;
  for (std::size_t c = 0; c < media.size(); ++c) {
    work.push_back({c, std::nullopt, grid_levels.back(), 0.0, 0.0, {}});
    for (std::size_t f = 0; f < incidents.size(); ++f)
      for (double h : grid_levels) work.push_back({c, f, h, 0.0, 0.0, {}});
  }
  run_parallel(work.size(), jobs, [&](std::size_t i) {
    Job& job = work[i];
    SolverOptions so;
    so.h = job.h;
    so.tol = tol;
    try {
      const MediumSpec& m = media[job.medium];
      const FarField ff =
          job.incident ? far_field(solve_scattering(m, incidents[*job.incident], so), n_angles)
                       : far_field(solve_scattering(MediumSpec::vacuum(m.hull), incidents.front(), so), n_angles);
      job.l2 = ff.l2_norm;
      job.sup = ff.sup_norm;
    } catch (const Error& e) {
      job.error = e.what();
    }
  });

  SweepResult out;
  std::size_t cursor = 0;
  for (std::size_t c = 0; c < media.size(); ++c) {
    const MediumSpec& m = media[c];
    const auto sectors = corner_sectors(m.hull, 0.25 * m.hull.shortest_edge());
    double psi_min = pi;
    for (const auto& s : sectors) psi_min = std::min(psi_min, s.aperture);
    const Job& control = work[cursor++];
    const double floor = std::max(control.error.empty() ? control.l2 : 0.0, tol);
    out.control_norms.push_back(control.l2);

    for (const IncidentField& f : incidents) {
      bool class_E = false;
      bool certified = false;
      for (std::size_t i = 0; i < sectors.size(); ++i) {
        class_E = class_E || class_E_membership(f, sectors[i]).has_value();
        certified = certified || corner_certified(m.corners[i], taylor_jet(f, sectors[i].vertex, 8), sectors[i]);
      }
      SweepVerdict v{cases[c].label, describe(f), class_E, certified && !class_E, floor, 0.0, 0.0, true};
      std::vector<double> norms;
      bool failed = !control.error.empty();
      for (double h : grid_levels) {
        const Job& job = work[cursor++];
        out.rows.push_back({cases[c].label, psi_min, contrast_kind(m.corners), v.incident, class_E, certified, h,
                            job.l2, job.sup, job.error});
        if (job.error.empty())
          norms.push_back(job.l2);
        else
          failed = true;
      }
      if (!norms.empty()) v.min_norm = *std::min_element(norms.begin(), norms.end());
      if (norms.size() >= 2) v.drift = std::abs(norms.back() - norms[norms.size() - 2]) / norms.back();
      if (v.asserted) v.pass = !failed && v.min_norm > 10 * floor && v.drift <= 0.05;
      out.verdicts.push_back(v);
    }
  }
  return out;
}

std::vector<SweepCase> default_sweep_cases() {
  std::vector<SweepCase> cases;
  const std::vector<Vec2> square = square_vertices(1.0);
  {
    MediumConfig c;
    c.vertices = square;
    c.corners = {CornerSpec{0.5, 2.5, 0.0, 0.5}};
    c.a_bulk = 0.2;
    cases.push_back({"square_potential_corner", c});
  }
  {
    MediumConfig c;
    c.vertices = square;
    c.corners = {CornerSpec{0.0, 0.0, 0.3, 0.5}};
    cases.push_back({"square_conductivity_corner", c});
  }
  {
    // Aperture 2 rad at the first vertex, not a rational multiple of pi within tolerance.
    const Vec2 A{-0.5, -0.5};
    const double AB = 1.2;
    const double angB = 0.6;
    const double angC = pi - 2.0 - angB;
    const double AC = AB * std::sin(angB) / std::sin(angC);
    MediumConfig c;
    c.vertices = {A, A + Vec2{AB, 0.0}, A + AC * unit_vector(2.0)};
    c.corners = {CornerSpec{0.0, 0.0, 0.3, 0.5}};
    cases.push_back({"triangle_conductivity_corner_2rad", c});
  }
  return cases;
}

std::vector<IncidentField> default_sweep_incidents() {
  return {PlaneWave{1.0, {1.0, 0.0}}, PlaneWave{1.0, unit_vector(1.0)},
          BesselMode{1.0, 2, 1.0, {-0.5, -0.5}}};
}

Report sweep_report(const SweepResult& r) {
  Report rep{"corner_sweep", {}, 0.0};
  for (const SweepRow& row : r.rows)
    rep.add(info("far_field_l2", row.label + " | " + row.incident + " | h=" + fmt(row.h), row.l2,
                 row.error.empty() ? (row.class_E ? "class E" : "") : row.error));
  for (const SweepVerdict& v : r.verdicts) {
    const std::string label = v.label + " | " + v.incident;
    if (!v.asserted) {
      rep.add(info("positivity_unasserted", label, v.min_norm, v.class_E ? "class E pair" : "not certified"));
      continue;
    }
    ReportRow a = at_least("positivity_over_floor", label, v.min_norm / v.floor, 10.0);
    a.pass = a.pass && v.pass;
    rep.add(a);
    rep.add(at_most("level_drift", label, v.drift, 0.05));
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

double estimate_vanishing_order(const std::function<double(double)>& f, double r_lo, double r_hi,
                                int samples) {
  std::vector<double> lx, ly;
  double peak = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (samples - 1));
    const double v = std::abs(f(r));
    peak = std::max(peak, v);
    lx.push_back(std::log(r));
    ly.push_back(std::log(std::max(v, 1e-300)));
  }
  if (peak <= 1e-13) return std::numeric_limits<double>::infinity();
  const double n = samples;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool AdmissibilityReport::admissible() const {
  return !corners.empty() &&
         std::all_of(corners.begin(), corners.end(), [](const CornerAdmissibility& c) { return c.pass(); });
}

AdmissibilityReport admissibility_check(const MediumSpec& m) {
  AdmissibilityReport rep;
  if (m.corners.empty()) return rep;
  const auto sectors = corner_sectors(m.hull, 0.25 * m.hull.shortest_edge());
  const double scale = m.hull.shortest_edge();
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    const Sector& s = sectors[i];
    const CornerSpec& c = m.corners[i];
    const Vec2 b = unit_vector(s.bisector_angle());
    CornerAdmissibility ca;
    ca.vertex = static_cast<int>(i);
    ca.rho0 = c.rho0;
    ca.required_a = 2 + c.sigma - 0.1;
    ca.required_c = c.sigma - 0.1;
    // Contrast limits are read just inside the vertex.
    const double rho_at = m.c(s.vertex + (1e-9 * scale) * b) - 1.0;
    ca.rho_ok = std::abs(rho_at) > 1e-8;
    ca.a_slope = estimate_vanishing_order([&](double r) { return m.a(s.vertex + r * b) - 1.0; },
                                          1e-3 * scale, 3e-2 * scale);
    ca.c_slope = estimate_vanishing_order(
        [&](double r) { return m.c(s.vertex + r * b) - 1.0 - rho_at; }, 1e-3 * scale, 3e-2 * scale);
    ca.a_ok = ca.a_slope >= ca.required_a;
    ca.c_ok = ca.c_slope >= ca.required_c;
    rep.corners.push_back(ca);
  }
  return rep;
}

namespace {

bool same_hull(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool all = true;
    for (std::size_t i = 0; i < a.size() && all; ++i) all = norm(a.vertex(i) - b.vertex(i + shift)) < 1e-12;
    if (all) return true;
  }
  return false;
}

}  // namespace

UniquenessOutcome hull_uniqueness_demo(const MediumSpec& m1, const MediumSpec& m2,
                                       const IncidentField& f, double h_coarse, int n_angles) {
  UniquenessOutcome out;
  out.first = admissibility_check(m1);
  out.second = admissibility_check(m2);
  out.hulls_differ = !same_hull(m1.hull, m2.hull);
  auto solve_pair = [&](const MediumSpec& m) {
    SolverOptions a;
    a.h = h_coarse;
    SolverOptions b;
    b.h = h_coarse / 2;
    return std::pair{far_field(solve_scattering(m, f, a), n_angles), far_field(solve_scattering(m, f, b), n_angles)};
  };
  const auto [c1, f1] = solve_pair(m1);
  const auto [c2, f2] = solve_pair(m2);
  out.discrepancy = far_field_distance(f1, f2, false);
  out.relative_discrepancy = far_field_distance(f1, f2, true);
  out.self_convergence = std::max(far_field_distance(c1, f1, false), far_field_distance(c2, f2, false));
  out.asserted = out.hulls_differ && out.first.admissible() && out.second.admissible();
  if (out.asserted) out.pass = out.discrepancy >= 10 * out.self_convergence;
  return out;
}

Report uniqueness_report(const UniquenessOutcome& u) {
  Report rep{"hull_uniqueness", {}, 0.0};
  auto add_adm = [&](const AdmissibilityReport& a, const std::string& who) {
    for (const auto& c : a.corners) {
      const std::string label = who + " vertex " + std::to_string(c.vertex);
      rep.add(at_least("a_vanishing_order", label, c.a_slope, c.required_a));
      rep.add(at_least("c_minus_rho0_order", label, c.c_slope, c.required_c));
      rep.add(at_least("potential_jump", label, std::abs(c.rho0), 1e-12));
    }
  };
  add_adm(u.first, "first");
  add_adm(u.second, "second");
  rep.add(info("discrepancy", "L2(S1)", u.discrepancy));
  rep.add(info("self_convergence", "h vs h/2", u.self_convergence));
  if (u.asserted)
    rep.add(at_least("discrepancy_over_self_convergence", "hulls differ", u.discrepancy / u.self_convergence, 10.0));
  else
    rep.add(info("discrepancy_over_self_convergence", "no claim", u.discrepancy / std::max(u.self_convergence, 1e-300)));
  return rep;
}

Report hull_uniqueness_square_study(const IncidentField& f, double h_coarse, int n_angles) {
  MediumConfig base;
  base.vertices = square_vertices(1.0);
  base.corners = {CornerSpec{0.5, 2.5, 0.0, 0.5}};
  base.a_bulk = 0.2;
  MediumConfig moved = base;
  // Upper-right vertex pushed outward along the diagonal by 0.2.
  moved.vertices[2] = moved.vertices[2] + 0.2 * unit_vector(pi / 4);
  const MediumSpec m1 = assemble_medium(base);
  const MediumSpec m2 = assemble_medium(moved);
  return uniqueness_report(hull_uniqueness_demo(m1, m2, f, h_coarse, n_angles));
}

// ---------------------------------------------------------------------------------------------

double disc_determinant(int mode, double k, double n0, double radius) {
  const double kr = k * radius;
  const double kn = k * std::sqrt(n0) * radius;
  return bm::cyl_bessel_j(mode, kn) * k * bm::cyl_bessel_j_prime(mode, kr) -
         k * std::sqrt(n0) * bm::cyl_bessel_j_prime(mode, kn) * bm::cyl_bessel_j(mode, kr);
}

EigenpairDisc disc_transmission_eigenpair(double radius, double n0, double k_lo, double k_hi,
                                          int max_mode, int trace_points) {
  require(n0 > 0 && std::abs(n0 - 1.0) > 1e-12, ErrorKind::PreconditionViolated,
          "refractive index must be positive and different from 1");
  require(radius > 0 && k_hi > k_lo && k_lo >= 0, ErrorKind::InvalidArgument, "bad search interval");
  const double start = std::max(k_lo, 1e-3 * (k_hi - k_lo));
  const int steps = 4000;
  const double dk = (k_hi - start) / steps;
  double best_k = std::numeric_limits<double>::infinity();
  int best_m = -1;
  std::pair<double, double> bracket;
  for (int m = 0; m <= max_mode; ++m) {
    double prev = disc_determinant(m, start, n0, radius);
    for (int i = 1; i <= steps; ++i) {
      const double k = start + i * dk;
      if (k >= best_k) break;
      const double cur = disc_determinant(m, k, n0, radius);
      if (prev == 0.0 || prev * cur < 0) {
        best_k = k;
        best_m = m;
        bracket = {k - dk, k};
        break;
      }
      prev = cur;
    }
  }
  if (best_m < 0) fail(ErrorKind::NoRootInInterval, "no sign change of the disc determinant in the interval");

  auto det = [&](double k) { return disc_determinant(best_m, k, n0, radius); };
  double lo = bracket.first;
  double hi = bracket.second;
  double flo = det(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = det(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * hi) break;
  }
  EigenpairDisc e;
  e.radius = radius;
  e.n0 = n0;
  e.mode = best_m;
  e.kappa = 0.5 * (lo + hi);
  e.determinant = det(e.kappa);
  require(std::abs(e.determinant) <= 1e-8, ErrorKind::NoRootInInterval, "root polish failed");
  const double k = e.kappa;
  const double jin = bm::cyl_bessel_j(best_m, k * std::sqrt(n0) * radius);
  e.interior_amplitude = bm::cyl_bessel_j(best_m, k * radius) / jin;
  // Cauchy data mismatch of the reconstructed pair on the circle.
  const double du = e.interior_amplitude * k * std::sqrt(n0) * bm::cyl_bessel_j_prime(best_m, k * std::sqrt(n0) * radius);
  const double dv = k * bm::cyl_bessel_j_prime(best_m, k * radius);
  e.reconstruction_residual = std::abs(du - dv) / std::max(std::abs(dv), 1e-300);
  e.v_trace = circle_trace({0, 0}, radius, trace_points);
  fill_trace(e.v_trace, BesselMode{k, best_m, 1.0, {0, 0}});
  return e;
}

std::vector<HerglotzRow> herglotz_blowup_study(const EigenpairDisc& e, const std::vector<double>& lambdas,
                                               int kernel_grid) {
  std::vector<HerglotzRow> rows;
  for (double lam : lambdas) {
    const HerglotzFit fit = herglotz_least_squares(e.v_trace, e.kappa, kernel_grid, lam);
    rows.push_back({lam, fit.misfit, fit.kernel_norm});
  }
  return rows;
}

Report herglotz_report(const std::vector<HerglotzRow>& rows) {
  Report rep{"herglotz", {}, 0.0};
  bool monotone = true;
  double worst_step = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rep.add(info("kernel_norm", "lambda=" + fmt(rows[i].lambda), rows[i].kernel_norm));
    rep.add(info("misfit", "lambda=" + fmt(rows[i].lambda), rows[i].misfit));
    if (i > 0) {
      const double step = rows[i].misfit - rows[i - 1].misfit;
      worst_step = std::max(worst_step, step);
      monotone = monotone && step <= 1e-12 * std::max(rows[i - 1].misfit, 1e-300);
    }
  }
  ReportRow m = at_most("misfit_nonincreasing", "along lambdas", worst_step, 0.0);
  m.pass = monotone;
  rep.add(m);
  if (!rows.empty())
    rep.add(at_least("kernel_norm_growth", "first to last lambda",
                     rows.back().kernel_norm / rows.front().kernel_norm, 10.0));
  return rep;
}

// ---------------------------------------------------------------------------------------------

Report herglotz_disc_study(const HerglotzStudyOptions& opt) {
  const auto& lambdas = opt.lambdas;
  require(!lambdas.empty(), ErrorKind::InvalidArgument, "need at least one lambda");
  const EigenpairDisc e = disc_transmission_eigenpair(opt.radius, opt.n0, opt.k_lo, opt.k_hi);
  Report rep = herglotz_report(herglotz_blowup_study(e, lambdas, opt.kernel_grid));
  rep.add(at_most("eigenpair_determinant", "n0=4 mode " + std::to_string(e.mode), std::abs(e.determinant), 1e-8,
                  "kappa " + fmt(e.kappa)));
  rep.add(at_most("eigenpair_reconstruction", "Cauchy match", e.reconstruction_residual, 1e-6));

  BoundaryTrace plane = circle_trace({0, 0}, opt.radius, 128);
  fill_trace(plane, PlaneWave{e.kappa, unit_vector(0.3)});
  const auto flat =
      herglotz_blowup_study({e.radius, e.n0, e.kappa, e.mode, 0.0, 0.0, plane, 0.0}, lambdas, opt.kernel_grid);
  rep.add(info("plane_wave_kernel_growth", "extendable target", flat.back().kernel_norm / flat.front().kernel_norm));

  const double lam = lambdas.back();
  const double coarse = herglotz_least_squares(e.v_trace, e.kappa, opt.kernel_grid, lam).misfit;
  const double fine = herglotz_least_squares(e.v_trace, e.kappa, 4 * opt.kernel_grid, lam).misfit;
  // Nested kernel spaces; allow rounding in the normal equations.
  rep.add(at_most("misfit_refinement_increase", "kernel grid x4", fine - coarse, 1e-6 * coarse + 1e-28));
  return rep;
}

Report jet_structure_study(int configurations, unsigned seed) {
  Report rep{"jet_structure", {}, 0.0};
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  std::uniform_real_distribution<double> wave(0.5, 3.0);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::uniform_int_distribution<int> order(0, 5);
  double worst_plane = 0.0;
  double worst_bessel = 0.0;
  int failures = 0;
  for (int c = 0; c < configurations; ++c) {
    const double k = wave(gen);
    const Vec2 center{offset(gen), offset(gen)};
    const PlaneWave pw{k, unit_vector(angle(gen))};
    const BesselMode bmode{k, order(gen), std::polar(1.0, angle(gen)), {offset(gen), offset(gen)}};
    for (int kind = 0; kind < 2; ++kind) {
      const IncidentField f = kind == 0 ? IncidentField(pw) : IncidentField(bmode);
      // Bessel modes are also expanded at their own centre, where the low orders vanish.
      for (const Vec2 at : {center, kind == 1 ? bmode.center : center}) {
        const JetReport jr = verify_jet_structure(taylor_jet(f, at, 6), k, 1e-10);
        double worst = 0.0;
        for (const auto& item : jr.items) worst = std::max(worst, item.residual);
        (kind == 0 ? worst_plane : worst_bessel) = std::max(kind == 0 ? worst_plane : worst_bessel, worst);
        if (!jr.all_pass()) ++failures;
      }
    }
  }
  rep.add(at_most("structure_residual", "plane waves", worst_plane, 1e-10));
  rep.add(at_most("structure_residual", "bessel modes m<=5", worst_bessel, 1e-10));
  rep.add(at_most("failed_configurations", std::to_string(configurations) + " random", failures, 0.0));
  return rep;
}

Classification classify(const IncidentField& f, const Sector& s, double rel_tol) {
  const FieldExpansion e = taylor_jet(f, s.vertex, 8);
  return {e.N0, e.N, exceptional_angle(s.aperture, e.N, rel_tol)};
}

}  // namespace cornerlab
