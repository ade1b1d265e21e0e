#include "cornerlab/suites.hpp"

#include <chrono>

namespace cornerlab {

const std::vector<Suite>& suite_registry() {
  static const std::vector<Suite> registry = {
      {"incomplete_gamma_law", "truncated gamma integrals against Gamma(b)/mu^b, 24 (b, mu) cases", 5.0,
       [](const SuiteContext&) { return incomplete_gamma_study(); }},
      {"corner_constant_c1", "tau^2 times the plain corner integral against C1 on a 5x5 (psi0, phi) grid", 30.0,
       [](const SuiteContext&) { return c1_constant_study(); }},
      {"corner_decay_exceptional_angles",
       "decay exponents of gradient corner integrals and vanishing prefactors at exceptional apertures", 120.0,
       [](const SuiteContext&) { return exceptional_decay_study(); }},
      {"ctilde_dichotomy", "direction search for nonzero C~1; identically zero only for a right angle without rho0",
       10.0, [](const SuiteContext&) { return ctilde_dichotomy_study(); }},
      {"general_exponent_bounds", "fitted exponents of the gradient and potential corner terms against their bounds",
       120.0, [](const SuiteContext&) { return general_bounds_study(); }},
      {"cgo_correctness", "Faddeev inverse, full CGO PDE residual and L^p residual decay on a 512^2 grid", 180.0,
       [](const SuiteContext&) { return cgo_study(); }},
      {"disc_mie_validation", "volume integral solver against the cylindrical-harmonic series for a disc", 60.0,
       [](const SuiteContext&) { return mie_study(); }},
      {"identity_residuals", "transmission identity on manufactured data and the corner identity with CGO fields",
       600.0, [](const SuiteContext&) { return identity_study(); }},
      {"corner_scattering_positivity", "far-field norms of certified (corner, incident) pairs against a vacuum floor",
       600.0,
       [](const SuiteContext& ctx) {
         return sweep_report(corner_scattering_sweep(default_sweep_cases(), default_sweep_incidents(),
                                                     {0.05, 0.025}, 64, 1e-10, ctx.jobs));
       }},
      {"hull_uniqueness_square", "far-field discrimination of two admissible squares with different hulls", 120.0,
       [](const SuiteContext&) { return hull_uniqueness_square_study(); }},
      {"herglotz_blowup_disc", "regularized Herglotz fits of a disc transmission eigenfunction trace", 60.0,
       [](const SuiteContext&) { return herglotz_disc_study(); }},
      {"jet_structure", "structural identities of Taylor jets for random plane waves and Bessel modes", 600.0,
       [](const SuiteContext&) { return jet_structure_study(); }},
  };
  return registry;
}

const Suite* find_suite(const std::string& name) {
  for (const Suite& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

Report run_suite(const Suite& s, const SuiteContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  Report r = s.run(ctx);
  r.name = s.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace cornerlab
