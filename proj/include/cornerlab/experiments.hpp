#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cornerlab/cgo_solver.hpp"
#include "cornerlab/corner_asymptotics.hpp"
#include "cornerlab/forward_solver.hpp"
#include "cornerlab/identities.hpp"
#include "cornerlab/parallel.hpp"

namespace cornerlab {

// One checked (or merely recorded) quantity.
struct ReportRow {
  std::string check;
  std::string label;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  bool asserted = true;
  std::string note;
};

struct Report {
  std::string name;
  std::vector<ReportRow> rows;
  double seconds = 0.0;

  bool all_pass() const;
  void add(ReportRow row) { rows.push_back(std::move(row)); }
  void append(const Report& other);
};

// --- closed-form asymptotics -------------------------------------------------------------------

Report incomplete_gamma_study();
Report c1_constant_study(double tau = 200.0);
Report exceptional_decay_study();
Report ctilde_dichotomy_study(int directions = 64);
Report general_bounds_study();

struct AsymptoticsOptions {
  bool incomplete_gamma = true;
  bool c1 = true;
  bool exceptional = true;
  bool ctilde = true;
  bool bounds = true;
};

// Runs the selected studies plus informational rows comparing the two C~ formulas.
Report asymptotics_report(const AsymptoticsOptions& opt = {});

// --- CGO ---------------------------------------------------------------------------------------

struct CgoStudyOptions {
  int n = 512;
  double L = 16.0;
  double k = 1.0;
  double tau_min = 50.0;
  double tau_max = 400.0;
  int ladder = 5;
};

Report cgo_study(const CgoStudyOptions& opt = {});

// --- forward solver ----------------------------------------------------------------------------

struct MieStudyOptions {
  double k = 2.0;
  double radius = 1.0;
  double a_in = 1.0;
  double c_in = 2.0;
  std::vector<double> series_ppw = {10.0, 20.0, 40.0, 80.0};  // each must match the series
  double points_per_wavelength = 40.0;  // reciprocity, optical theorem, self-convergence
  int n_angles = 128;
};

Report mie_study(const MieStudyOptions& opt = {});

// --- identities --------------------------------------------------------------------------------

Report identity_study();

// --- corner scattering -------------------------------------------------------------------------

struct SweepCase {
  std::string label;
  MediumConfig medium;
};

struct SweepRow {
  std::string label;
  double psi0 = 0.0;          // smallest aperture of the hull
  std::string contrast_kind;  // "conductivity jump", "potential jump" or "both"
  std::string incident;
  bool class_E = false;
  bool certified = false;
  double h = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
  std::string error;  // solver failure for this row, empty otherwise
};

struct SweepVerdict {
  std::string label;
  std::string incident;
  bool class_E = false;
  bool asserted = false;
  double floor = 0.0;
  double drift = 0.0;
  double min_norm = 0.0;
  bool pass = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepVerdict> verdicts;
  std::vector<double> control_norms;  // zero-contrast control per case
  bool all_pass() const;
};

// True when the corner theory guarantees scattering at this corner: potential jump with a
// vanishing to order 2+sigma, or to order 1+sigma with N0 = N; or a conductivity jump with the
// pair outside class E.
bool corner_certified(const CornerSpec& c, const FieldExpansion& jet, const Sector& s);

SweepResult corner_scattering_sweep(const std::vector<SweepCase>& cases,
                                    const std::vector<IncidentField>& incidents,
                                    const std::vector<double>& grid_levels, int n_angles = 64,
                                    double tol = 1e-10, int jobs = 1);

std::vector<SweepCase> default_sweep_cases();
std::vector<IncidentField> default_sweep_incidents();
Report sweep_report(const SweepResult& r);

// --- admissibility and hull uniqueness ---------------------------------------------------------

struct CornerAdmissibility {
  int vertex = 0;
  double rho0 = 0.0;
  double a_slope = 0.0;   // fitted vanishing order of |a - 1| along the bisector
  double c_slope = 0.0;   // fitted order of |c - 1 - rho0|; infinity when identically zero
  double required_a = 0.0;
  double required_c = 0.0;
  bool rho_ok = false;
  bool a_ok = false;
  bool c_ok = false;
  bool pass() const { return rho_ok && a_ok && c_ok; }
};

struct AdmissibilityReport {
  std::vector<CornerAdmissibility> corners;
  bool admissible() const;
};

// Log-log slope of |f(r)| over r in [r_lo, r_hi]; infinity when f vanishes on the whole range.
double estimate_vanishing_order(const std::function<double(double)>& f, double r_lo, double r_hi,
                                int samples = 24);

AdmissibilityReport admissibility_check(const MediumSpec& m);

struct UniquenessOutcome {
  double discrepancy = 0.0;        // ||F1 - F2|| at the finest level
  double relative_discrepancy = 0.0;
  double self_convergence = 0.0;   // max over media of ||F(h) - F(h/2)||
  bool hulls_differ = false;
  AdmissibilityReport first;
  AdmissibilityReport second;
  bool asserted = false;
  bool pass = true;
};

UniquenessOutcome hull_uniqueness_demo(const MediumSpec& m1, const MediumSpec& m2,
                                       const IncidentField& f, double h_coarse,
                                       int n_angles = 64);

Report uniqueness_report(const UniquenessOutcome& u);
// Admissible unit square against the same square with its upper-right vertex pushed 0.2 outward.
Report hull_uniqueness_square_study(const IncidentField& f = PlaneWave{2.0, {1.0, 0.0}}, double h_coarse = 0.04,
                                    int n_angles = 64);

// --- transmission eigenpair and Herglotz study -------------------------------------------------

struct EigenpairDisc {
  double radius = 1.0;
  double n0 = 4.0;
  double kappa = 0.0;
  int mode = 0;
  double determinant = 0.0;
  double interior_amplitude = 0.0;  // u = amplitude J_m(k sqrt(n0) r) e^{i m theta}
  BoundaryTrace v_trace;            // v = J_m(k r) e^{i m theta} on the circle
  double reconstruction_residual = 0.0;
};

double disc_determinant(int mode, double k, double n0, double radius);

EigenpairDisc disc_transmission_eigenpair(double radius, double n0, double k_lo, double k_hi,
                                          int max_mode = 8, int trace_points = 128);

struct HerglotzRow {
  double lambda = 0.0;
  double misfit = 0.0;
  double kernel_norm = 0.0;
};

std::vector<HerglotzRow> herglotz_blowup_study(const EigenpairDisc& e,
                                               const std::vector<double>& lambdas,
                                               int kernel_grid = 64);
Report herglotz_report(const std::vector<HerglotzRow>& rows);
struct HerglotzStudyOptions {
  double radius = 1.0;
  double n0 = 4.0;
  double k_lo = 0.0;
  double k_hi = 5.0;
  std::vector<double> lambdas{1e-2, 1e-4, 1e-6};
  int kernel_grid = 64;
};

// Eigenpair search, the lambda sweep, and two contrast rows: a plane-wave target (norm
// saturates) and kernel grid refinement 64 -> 256 at the last lambda (misfit nonincreasing).
Report herglotz_disc_study(const HerglotzStudyOptions& opt = {});

// --- jets --------------------------------------------------------------------------------------

Report jet_structure_study(int configurations = 100, unsigned seed = 7);

// --- classification ----------------------------------------------------------------------------

struct Classification {
  int N0 = 0;
  int N = 0;
  std::optional<int> l;
};

Classification classify(const IncidentField& f, const Sector& s, double rel_tol = 1e-6);

}  // namespace cornerlab
