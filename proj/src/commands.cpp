#include "cornerlab/commands.hpp"

#include "cornerlab/suites.hpp"

namespace cornerlab {

namespace {

constexpr const char* P = "parameters";

AsymptoticsOptions read_asymptotics(const Json& p) {
  ObjectReader r(p, P, {"incomplete_gamma", "c1", "exceptional", "ctilde", "bounds"});
  return {r.boolean("incomplete_gamma", true), r.boolean("c1", true), r.boolean("exceptional", true),
          r.boolean("ctilde", true), r.boolean("bounds", true)};
}

CgoStudyOptions read_cgo(const Json& p) {
  ObjectReader r(p, P, {"n", "L", "k", "tau_min", "tau_max", "ladder"});
  CgoStudyOptions o;
  o.n = r.integer("n", o.n, 32);
  if (o.n % 2) throw ConfigError(r.path("n"), "must be even");
  o.L = r.positive("L", o.L);
  o.k = r.positive("k", o.k);
  o.tau_min = r.positive("tau_min", o.tau_min);
  o.tau_max = r.positive("tau_max", o.tau_max);
  if (o.tau_max <= o.tau_min) throw ConfigError(r.path("tau_max"), "must exceed tau_min");
  o.ladder = r.integer("ladder", o.ladder, 2);
  return o;
}

struct ForwardParams {
  MediumConfig medium;
  IncidentField incident = PlaneWave{2.0, {1.0, 0.0}};
  SolverOptions solver;
  int n_angles = 128;
  double series_tolerance = 1e-3;
};

ForwardParams read_forward(const Json& p) {
  ObjectReader r(p, P,
                 {"medium", "incident", "h", "points_per_wavelength", "quadrature_ppw", "tol", "restart",
                  "max_iter", "n_angles", "series_tolerance"});
  ForwardParams f;
  if (r.has("medium")) {
    f.medium = parse_medium(r.at("medium"), r.path("medium"));
  } else {
    f.medium.kind = "disc";
    f.medium.radius = 1.0;
    f.medium.c_in = 2.0;
  }
  if (r.has("incident")) f.incident = parse_incident(r.at("incident"), r.path("incident"));
  f.solver.h = r.nonnegative("h", 0.0);
  f.solver.points_per_wavelength = r.positive("points_per_wavelength", 80.0);
  if (f.solver.h == 0.0 && f.solver.points_per_wavelength < 10.0)
    throw ConfigError(r.path("points_per_wavelength"), "must be at least 10");
  f.solver.quadrature_ppw = r.nonnegative("quadrature_ppw", f.solver.quadrature_ppw);
  f.solver.tol = r.positive("tol", f.solver.tol);
  f.solver.restart = r.integer("restart", f.solver.restart, 1);
  f.solver.max_iter = r.integer("max_iter", f.solver.max_iter, 1);
  f.n_angles = r.integer("n_angles", f.n_angles, 8);
  f.series_tolerance = r.positive("series_tolerance", f.series_tolerance);
  return f;
}

struct SweepParams {
  std::vector<SweepCase> cases = default_sweep_cases();
  std::vector<IncidentField> incidents = default_sweep_incidents();
  std::vector<double> levels{0.05, 0.025};
  int n_angles = 64;
  double tol = 1e-10;
};

SweepParams read_sweep(const Json& p) {
  ObjectReader r(p, P, {"cases", "incidents", "grid_levels", "n_angles", "tol"});
  SweepParams s;
  if (r.has("cases")) {
    const Json& cs = r.at("cases");
    if (!cs.is_array() || cs.empty()) throw ConfigError(r.path("cases"), "expected a nonempty array");
    s.cases.clear();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string path = r.path("cases") + "[" + std::to_string(i) + "]";
      ObjectReader c(cs[i], path, {"label", "medium"});
      s.cases.push_back({c.text("label", "case" + std::to_string(i)), parse_medium(c.at("medium"), c.path("medium"))});
      if (s.cases.back().medium.kind != "polygon") throw ConfigError(c.path("medium.kind"), "sweeps need polygons");
    }
  }
  if (r.has("incidents")) {
    const Json& is = r.at("incidents");
    if (!is.is_array() || is.empty()) throw ConfigError(r.path("incidents"), "expected a nonempty array");
    s.incidents.clear();
    for (std::size_t i = 0; i < is.size(); ++i)
      s.incidents.push_back(parse_incident(is[i], r.path("incidents") + "[" + std::to_string(i) + "]"));
  }
  s.levels = r.positive_list("grid_levels", s.levels);
  if (s.levels.size() < 2) throw ConfigError(r.path("grid_levels"), "need at least two levels");
  s.n_angles = r.integer("n_angles", s.n_angles, 8);
  s.tol = r.positive("tol", s.tol);
  return s;
}

struct UniquenessParams {
  std::optional<MediumConfig> first;
  std::optional<MediumConfig> second;
  IncidentField incident = PlaneWave{2.0, {1.0, 0.0}};
  double h_coarse = 0.04;
  int n_angles = 64;
};

UniquenessParams read_uniqueness(const Json& p) {
  ObjectReader r(p, P, {"first", "second", "incident", "h_coarse", "n_angles"});
  UniquenessParams u;
  if (r.has("first") != r.has("second")) throw ConfigError(r.path("second"), "give both media or neither");
  if (r.has("first")) {
    u.first = parse_medium(r.at("first"), r.path("first"));
    u.second = parse_medium(r.at("second"), r.path("second"));
  }
  if (r.has("incident")) u.incident = parse_incident(r.at("incident"), r.path("incident"));
  u.h_coarse = r.positive("h_coarse", u.h_coarse);
  u.n_angles = r.integer("n_angles", u.n_angles, 8);
  return u;
}

HerglotzStudyOptions read_herglotz(const Json& p) {
  ObjectReader r(p, P, {"radius", "n0", "k_lo", "k_hi", "lambdas", "kernel_grid"});
  HerglotzStudyOptions o;
  o.radius = r.positive("radius", o.radius);
  o.n0 = r.positive("n0", o.n0);
  if (o.n0 == 1.0) throw ConfigError(r.path("n0"), "must differ from 1");
  o.k_lo = r.nonnegative("k_lo", o.k_lo);
  o.k_hi = r.positive("k_hi", o.k_hi);
  if (o.k_hi <= o.k_lo) throw ConfigError(r.path("k_hi"), "must exceed k_lo");
  o.lambdas = r.positive_list("lambdas", o.lambdas);
  for (std::size_t i = 1; i < o.lambdas.size(); ++i)
    if (o.lambdas[i] >= o.lambdas[i - 1]) throw ConfigError(r.path("lambdas"), "must be strictly decreasing");
  o.kernel_grid = r.integer("kernel_grid", o.kernel_grid, 4);
  return o;
}

struct ClassifyParams {
  IncidentField incident;
  Sector sector;
  double tolerance = 1e-6;
};

ClassifyParams read_classify(const Json& p) {
  ObjectReader r(p, P, {"incident", "psi0", "vertex", "theta_ref", "epsilon", "tolerance"});
  ClassifyParams c;
  c.incident = parse_incident(r.at("incident"), r.path("incident"));
  const double psi0 = parse_angle(r.at("psi0"), r.path("psi0"));
  if (!(psi0 > 0 && psi0 < pi)) throw ConfigError(r.path("psi0"), "aperture must lie in (0, pi)");
  c.sector = Sector::make(r.point("vertex", {}), r.angle("theta_ref", 0.0), psi0, r.positive("epsilon", 1.0));
  c.tolerance = r.positive("tolerance", c.tolerance);
  return c;
}

const Suite& read_suite(const Json& p) {
  ObjectReader r(p, P, {"name"});
  const std::string name = r.text("name", "");
  const Suite* s = find_suite(name);
  if (!s) throw ConfigError(r.path("name"), name.empty() ? "required key missing" : "unknown suite '" + name + "'");
  return *s;
}

RunOutput run_forward(const ForwardParams& f) {
  RunOutput out;
  out.report.name = "forward";
  const MediumSpec m = assemble_medium(f.medium);
  const ScatteringSolution sol = solve_scattering(m, f.incident, f.solver);
  const FarField ff = far_field(sol, f.n_angles);

  out.report.add({"solver_residual", "gmres", sol.solver_residual, f.solver.tol, sol.solver_residual <= f.solver.tol,
                  true, std::to_string(sol.iterations) + " iterations"});
  out.report.add({"far_field_l2", describe(f.incident), ff.l2_norm, 0.0, true, false, ""});
  out.report.add({"far_field_sup", describe(f.incident), ff.sup_norm, 0.0, true, false, ""});
  if (const auto* pw = std::get_if<PlaneWave>(&f.incident)) {
    out.report.add({"optical_theorem", "defect", optical_theorem_defect(ff, pw->direction), 0.0, true, false, ""});
    if (m.disc) {
      const double err = far_field_distance(ff, mie_far_field(*m.disc, pw->k, pw->direction, f.n_angles));
      out.report.add({"far_field_vs_series", "disc", err, f.series_tolerance, err <= f.series_tolerance, true, ""});
    }
  }

  CsvTable t{"far_field.csv", {"angle", "re", "im"}, {}};
  for (std::size_t i = 0; i < ff.values.size(); ++i)
    t.rows.push_back({format_number(ff.angles[i]), format_number(ff.values[i].real()),
                      format_number(ff.values[i].imag())});
  out.tables.push_back(std::move(t));

  const PatchGrid& g = sol.grid;
  const Json meta = {{"shape", {g.n, g.n}},
                     {"layout", "row j holds y = origin_y + j h, column i holds x = origin_x + i h"},
                     {"origin", {g.origin.x, g.origin.y}},
                     {"h", g.h},
                     {"k", sol.k}};
  for (const auto& [stem, field] : {std::pair{"u_total", &sol.u_total}, std::pair{"u_scattered", &sol.u_scattered}}) {
    GridArtifact a{stem, meta, {}};
    a.values.assign(field->data(), field->data() + field->size());
    out.grids.push_back(std::move(a));
  }
  return out;
}

RunOutput run_sweep(const SweepParams& s, int jobs) {
  const SweepResult r = corner_scattering_sweep(s.cases, s.incidents, s.levels, s.n_angles, s.tol, jobs);
  RunOutput out;
  out.report = sweep_report(r);
  CsvTable t{"sweep.csv",
             {"label", "psi0", "contrast_kind", "incident", "class_E", "certified", "h", "l2", "sup", "error"},
             {}};
  for (const SweepRow& row : r.rows)
    t.rows.push_back({row.label, format_number(row.psi0), row.contrast_kind, row.incident,
                      row.class_E ? "true" : "false", row.certified ? "true" : "false", format_number(row.h),
                      format_number(row.l2), format_number(row.sup), row.error});
  out.tables.push_back(std::move(t));
  return out;
}

RunOutput run_classify(const ClassifyParams& c) {
  const Classification cl = classify(c.incident, c.sector, c.tolerance);
  RunOutput out;
  out.report.name = "classify";
  out.report.add({"N0", describe(c.incident), static_cast<double>(cl.N0), 0.0, true, false, ""});
  out.report.add({"N", describe(c.incident), static_cast<double>(cl.N), 0.0, true, false, ""});
  out.console = Json{{"class_E", cl.l.has_value()},
                     {"l", cl.l ? Json(*cl.l) : Json(nullptr)},
                     {"N0", cl.N0},
                     {"N", cl.N}};
  return out;
}

}  // namespace

void validate_parameters(const std::string& command, const Json& p) {
  if (command == "asymptotics") (void)read_asymptotics(p);
  else if (command == "cgo") (void)read_cgo(p);
  else if (command == "forward") (void)read_forward(p);
  else if (command == "sweep") (void)read_sweep(p);
  else if (command == "uniqueness") (void)read_uniqueness(p);
  else if (command == "herglotz") (void)read_herglotz(p);
  else if (command == "classify") {
    try {
      (void)read_classify(p);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string(P), e.what());
    }
  } else if (command == "suite") (void)read_suite(p);
  else throw ConfigError("command", "unknown command '" + command + "'");
}

RunOutput execute(const RunConfig& cfg, const RunContext& ctx) {
  const Json& p = cfg.parameters;
  const std::string& c = cfg.command;
  if (c == "asymptotics") return {asymptotics_report(read_asymptotics(p)), {}, {}, {}};
  if (c == "cgo") return {cgo_study(read_cgo(p)), {}, {}, {}};
  if (c == "forward") return run_forward(read_forward(p));
  if (c == "sweep") return run_sweep(read_sweep(p), ctx.jobs);
  if (c == "uniqueness") {
    const UniquenessParams u = read_uniqueness(p);
    if (!u.first) return {hull_uniqueness_square_study(u.incident, u.h_coarse, u.n_angles), {}, {}, {}};
    return {uniqueness_report(hull_uniqueness_demo(assemble_medium(*u.first), assemble_medium(*u.second),
                                                   u.incident, u.h_coarse, u.n_angles)),
            {}, {}, {}};
  }
  if (c == "herglotz") return {herglotz_disc_study(read_herglotz(p)), {}, {}, {}};
  if (c == "classify") return run_classify(read_classify(p));
  if (c == "suite") return {run_suite(read_suite(p), {ctx.jobs}), {}, {}, {}};
  throw ConfigError("command", "unknown command '" + c + "'");
}

}  // namespace cornerlab
