#include "cornerlab/helmholtz_fields.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>
#include <fstream>
#include <sstream>

namespace cornerlab {

namespace {

using Jet = std::vector<HomogeneousPoly>;

Jet zero_jet(int order) {
  Jet j;
  for (int d = 0; d <= order; ++d) j.emplace_back(d);
  return j;
}

void add_scaled(Jet& acc, cplx s, const Jet& j) {
  for (std::size_t d = 0; d < acc.size() && d < j.size(); ++d) acc[d] += s * j[d];
}

// Jet of exp(i k d.(center + y)) in y.
Jet plane_jet(double k, Vec2 d, Vec2 center, int order) {
  Jet out = zero_jet(order);
  const cplx phase = std::exp(I * k * dot(d, center));
  const cplx ax = I * k * d.x;
  const cplx ay = I * k * d.y;
  for (int deg = 0; deg <= order; ++deg)
    for (int a = 0; a <= deg; ++a)
      out[deg][a] = phase * std::pow(ax, a) * std::pow(ay, deg - a) /
                    (factorial(a) * factorial(deg - a));
  return out;
}

// Jet of J_n(k|y|) exp(i n arg y) at y = 0.
Jet cylindrical_jet(int n, double k, int order) {
  Jet out = zero_jet(order);
  const int mu = std::abs(n);
  if (mu > order) return out;
  const int sign = n >= 0 ? 1 : -1;
  const double pref = (n < 0 && mu % 2 == 1) ? -1.0 : 1.0;
  const HomogeneousPoly angular = complex_power(mu, sign);
  for (int s = 0; mu + 2 * s <= order; ++s) {
    const double c = (s % 2 == 0 ? 1.0 : -1.0) * std::pow(k / 2, mu + 2 * s) /
                     (factorial(s) * factorial(mu + s));
    out[mu + 2 * s] += cplx(pref * c) * (radial_power(s) * angular);
  }
  return out;
}

// Jet of C_m(x - c) about x = p via C_m(a + b) = sum_n C_{m-n}(a) C_n(b).
Jet shifted_cylindrical_jet(int m, double k, Vec2 c, Vec2 p, int order) {
  const Vec2 a = p - c;
  if (norm(a) == 0.0) return cylindrical_jet(m, k, order);
  Jet out = zero_jet(order);
  for (int n = -order; n <= order; ++n) add_scaled(out, cylindrical_wave(m - n, k, a), cylindrical_jet(n, k, order));
  return out;
}

struct JetPair {
  Jet values;
  std::vector<VectorPoly> gradients;
};

std::vector<VectorPoly> gradient_from(const Jet& gx, const Jet& gy, int order) {
  std::vector<VectorPoly> out;
  for (int d = 0; d < order; ++d) out.push_back({gx[d], gy[d]});
  return out;
}

JetPair jets(const PlaneWave& f, Vec2 center, int order) {
  Jet v = plane_jet(f.k, f.direction, center, order);
  Jet gx = zero_jet(order), gy = zero_jet(order);
  add_scaled(gx, I * f.k * f.direction.x, v);
  add_scaled(gy, I * f.k * f.direction.y, v);
  return {v, gradient_from(gx, gy, order)};
}

JetPair jets(const Herglotz& f, Vec2 center, int order) {
  Jet v = zero_jet(order), gx = zero_jet(order), gy = zero_jet(order);
  const double w = 2 * pi / f.kernel.size();
  for (std::size_t j = 0; j < f.kernel.size(); ++j) {
    if (f.kernel[j] == 0.0) continue;
    const Vec2 d = unit_vector(f.angle(j));
    const Jet pj = plane_jet(f.k, d, center, order);
    add_scaled(v, w * f.kernel[j], pj);
    add_scaled(gx, w * f.kernel[j] * I * f.k * d.x, pj);
    add_scaled(gy, w * f.kernel[j] * I * f.k * d.y, pj);
  }
  return {v, gradient_from(gx, gy, order)};
}

JetPair jets(const BesselMode& f, Vec2 center, int order) {
  Jet v = zero_jet(order), gx = zero_jet(order), gy = zero_jet(order);
  add_scaled(v, f.amplitude, shifted_cylindrical_jet(f.order, f.k, f.center, center, order));
  const Jet lower = shifted_cylindrical_jet(f.order - 1, f.k, f.center, center, order);
  const Jet upper = shifted_cylindrical_jet(f.order + 1, f.k, f.center, center, order);
  // d/dx C_m = k/2 (C_{m-1} - C_{m+1}),  d/dy C_m = i k/2 (C_{m-1} + C_{m+1}).
  add_scaled(gx, f.amplitude * (f.k / 2), lower);
  add_scaled(gx, -f.amplitude * (f.k / 2), upper);
  add_scaled(gy, f.amplitude * I * (f.k / 2), lower);
  add_scaled(gy, f.amplitude * I * (f.k / 2), upper);
  return {v, gradient_from(gx, gy, order)};
}

}  // namespace

double Herglotz::kernel_norm() const {
  if (kernel.empty()) return 0.0;
  double s = 0.0;
  for (const auto& g : kernel) s += std::norm(g);
  return std::sqrt(s * 2 * pi / kernel.size());
}

cplx cylindrical_wave(int m, double k, Vec2 y) {
  const double r = norm(y);
  if (r == 0.0) return m == 0 ? 1.0 : 0.0;
  const int mu = std::abs(m);
  const double sign = (m < 0 && mu % 2 == 1) ? -1.0 : 1.0;
  const double j = boost::math::cyl_bessel_j(mu, k * r);
  return sign * j * std::exp(I * static_cast<double>(m) * std::atan2(y.y, y.x));
}

double wavenumber(const IncidentField& f) {
  return std::visit([](const auto& g) { return g.k; }, f);
}

std::string describe(const IncidentField& f) {
  std::ostringstream os;
  os.precision(6);
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PlaneWave>) {
          os << "plane k=" << g.k << " dir=" << std::atan2(g.direction.y, g.direction.x);
        } else if constexpr (std::is_same_v<T, Herglotz>) {
          os << "herglotz k=" << g.k << " M=" << g.kernel.size() << " |g|=" << g.kernel_norm();
        } else {
          os << "bessel k=" << g.k << " m=" << g.order << " at (" << g.center.x << "," << g.center.y << ")";
        }
      },
      f);
  return os.str();
}

cplx evaluate(const IncidentField& f, Vec2 x) {
  return std::visit(
      [&](const auto& g) -> cplx {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PlaneWave>) {
          return std::exp(I * g.k * dot(g.direction, x));
        } else if constexpr (std::is_same_v<T, Herglotz>) {
          cplx s = 0.0;
          for (std::size_t j = 0; j < g.kernel.size(); ++j)
            s += g.kernel[j] * std::exp(I * g.k * dot(unit_vector(g.angle(j)), x));
          return s * (2 * pi / g.kernel.size());
        } else {
          return g.amplitude * cylindrical_wave(g.order, g.k, x - g.center);
        }
      },
      f);
}

CVec2 gradient(const IncidentField& f, Vec2 x) {
  return std::visit(
      [&](const auto& g) -> CVec2 {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PlaneWave>) {
          const cplx u = std::exp(I * g.k * dot(g.direction, x));
          return (I * g.k * u) * to_cvec(g.direction);
        } else if constexpr (std::is_same_v<T, Herglotz>) {
          CVec2 s{};
          for (std::size_t j = 0; j < g.kernel.size(); ++j) {
            const Vec2 d = unit_vector(g.angle(j));
            s = s + (g.kernel[j] * I * g.k * std::exp(I * g.k * dot(d, x))) * to_cvec(d);
          }
          return s * cplx(2 * pi / g.kernel.size());
        } else {
          const Vec2 y = x - g.center;
          const cplx lo = cylindrical_wave(g.order - 1, g.k, y);
          const cplx hi = cylindrical_wave(g.order + 1, g.k, y);
          return {g.amplitude * (g.k / 2) * (lo - hi), g.amplitude * I * (g.k / 2) * (lo + hi)};
        }
      },
      f);
}

Herglotz read_herglotz_csv(const std::string& path, double k) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::ConfigError, "cannot open kernel file " + path);
  std::vector<double> angles;
  Herglotz h{k, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    double a, re, im;
    if (!(ls >> a >> re >> im)) {
      if (angles.empty()) continue;  // header row
      fail(ErrorKind::ConfigError, "malformed kernel row: " + line);
    }
    angles.push_back(a);
    h.kernel.emplace_back(re, im);
  }
  require(!h.kernel.empty(), ErrorKind::ConfigError, "kernel file has no rows");
  for (std::size_t j = 0; j < angles.size(); ++j)
    require(std::abs(angles[j] - h.angle(j)) < 1e-9, ErrorKind::ConfigError,
            "kernel angles must be the uniform grid 2 pi j / M");
  return h;
}

std::optional<HarmonicPolynomial2D> FieldExpansion::lead_potential(double rel_tol) const {
  if (N + 1 > order()) return std::nullopt;
  const HomogeneousPoly& p = terms[N + 1];
  const double scale = std::max(p.max_abs(), 1e-300);
  if (p.laplacian().max_abs() > rel_tol * scale * (N + 1) * (N + 1)) return std::nullopt;
  return HarmonicPolynomial2D::from_poly(p);
}

FieldExpansion make_expansion(Vec2 center, double k, std::vector<HomogeneousPoly> terms,
                              std::vector<VectorPoly> gradient_terms) {
  require(terms.size() >= 3, ErrorKind::InvalidArgument, "jet order must be at least 2");
  for (std::size_t d = 0; d < terms.size(); ++d)
    require(terms[d].degree() == static_cast<int>(d), ErrorKind::InvalidArgument,
            "term j must have degree j");
  if (gradient_terms.empty())
    for (std::size_t d = 0; d + 1 < terms.size(); ++d) gradient_terms.push_back(gradient(terms[d + 1]));

  FieldExpansion e;
  e.center = center;
  e.k = k;
  double vmax = 0.0, gmax = 0.0;
  for (const auto& t : terms) vmax = std::max(vmax, t.max_abs());
  for (const auto& g : gradient_terms) gmax = std::max(gmax, g.max_abs());
  require(vmax > 0.0, ErrorKind::DegenerateJet, "all coefficients vanish through the jet order");
  require(gmax > 0.0, ErrorKind::DegenerateJet, "gradient jet vanishes through the jet order");

  e.N0 = -1;
  for (std::size_t d = 0; d < terms.size() && e.N0 < 0; ++d)
    if (terms[d].max_abs() > jet_threshold * vmax) e.N0 = static_cast<int>(d);
  e.N = -1;
  for (std::size_t d = 0; d < gradient_terms.size() && e.N < 0; ++d)
    if (gradient_terms[d].max_abs() > jet_threshold * gmax) e.N = static_cast<int>(d);
  e.v0 = terms[0][0];
  e.Vlead = gradient_terms[e.N];
  e.terms = std::move(terms);
  e.gradient_terms = std::move(gradient_terms);
  return e;
}

FieldExpansion taylor_jet(const IncidentField& f, Vec2 center, int order) {
  require(order >= 2, ErrorKind::InvalidArgument, "jet order must be at least 2");
  JetPair jp = std::visit([&](const auto& g) { return jets(g, center, order); }, f);
  return make_expansion(center, wavenumber(f), std::move(jp.values), std::move(jp.gradients));
}

bool JetReport::all_pass() const {
  for (const auto& r : items)
    if (!r.pass) return false;
  return true;
}

JetReport verify_jet_structure(const FieldExpansion& e, double k, double tol) {
  JetReport rep;
  double scale = 0.0;
  for (const auto& t : e.terms) scale = std::max(scale, t.max_abs());
  for (const auto& g : e.gradient_terms) scale = std::max(scale, g.max_abs());
  scale = std::max(scale, 1e-300);
  const int J = e.order();
  auto term = [&](int d) -> const HomogeneousPoly* {
    return (d >= 0 && d <= J) ? &e.terms[d] : nullptr;
  };
  auto grad = [&](int d) -> const VectorPoly* {
    return (d >= 0 && d < static_cast<int>(e.gradient_terms.size())) ? &e.gradient_terms[d] : nullptr;
  };

  {
    double r = 0.0;
    for (const auto& g : e.gradient_terms) r = std::max(r, g.curl().max_abs());
    rep.items.push_back({"curl_free", r / scale <= tol, r / scale, ""});
  }
  {
    double r = 0.0;
    for (int d = 0; d < static_cast<int>(e.gradient_terms.size()); ++d) {
      const VectorPoly diff{e.gradient_terms[d].x - e.terms[d + 1].dx(),
                            e.gradient_terms[d].y - e.terms[d + 1].dy()};
      r = std::max(r, diff.max_abs());
    }
    rep.items.push_back({"gradient_matches_values", r / scale <= tol, r / scale, ""});
  }
  {
    CheckRow row{"degree_order", true, 0.0, ""};
    if (e.N <= e.N0 && e.N0 <= e.N + 1) {
      row.note = "N <= N0 <= N+1";
    } else if (e.N0 == 0 && e.N == 1) {
      double r = 0.0;
      std::string missing;
      if (auto t = term(1)) r = std::max(r, t->max_abs());
      if (auto g = grad(2)) r = std::max(r, g->divergence().max_abs());
      else missing += " V2";
      if (auto t = term(3)) r = std::max(r, t->laplacian().max_abs());
      else missing += " v3";
      row.residual = r / scale;
      row.pass = row.residual <= tol;
      row.note = "N0=0, N=1 requires v1 = div V2 = lap v3 = 0";
      if (!missing.empty()) row.note += "; beyond jet order:" + missing;
    } else {
      row.pass = false;
      row.residual = 1.0;
      row.note = "N0=" + std::to_string(e.N0) + " N=" + std::to_string(e.N);
    }
    rep.items.push_back(row);
  }
  {
    CheckRow row{"leading_divergence", true, 0.0, ""};
    if (const auto* g = grad(e.N)) {
      HomogeneousPoly div = g->divergence();
      if (e.N == 1) {
        div[0] += k * k * e.v0;
        row.note = "div V_1 = -k^2 v0";
      } else {
        row.note = "div V_N = 0";
      }
      row.residual = div.max_abs() / scale;
      row.pass = row.residual <= tol;
    }
    rep.items.push_back(row);
  }
  {
    double r = 0.0;
    for (int d : {e.N0, e.N0 + 1})
      if (auto t = term(d)) r = std::max(r, t->laplacian().max_abs());
    for (int d : {e.N, e.N + 1})
      if (auto g = grad(d)) r = std::max({r, g->x.laplacian().max_abs(), g->y.laplacian().max_abs()});
    rep.items.push_back({"harmonic_leading_terms", r / scale <= tol, r / scale, ""});
  }
  return rep;
}

std::optional<int> class_E_membership(const IncidentField& f, const Sector& s, int order) {
  const FieldExpansion e = taylor_jet(f, s.vertex, order);
  return exceptional_angle(s.aperture, e.N);
}

BoundaryTrace circle_trace(Vec2 center, double radius, int n_points) {
  BoundaryTrace t;
  for (int i = 0; i < n_points; ++i) {
    const Vec2 n = unit_vector(2 * pi * i / n_points);
    t.points.push_back(center + radius * n);
    t.normals.push_back(n);
    t.weights.push_back(2 * pi * radius / n_points);
  }
  return t;
}

void fill_trace(BoundaryTrace& t, const IncidentField& f) {
  t.values.clear();
  t.normal_derivatives.clear();
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    t.values.push_back(evaluate(f, t.points[i]));
    t.normal_derivatives.push_back(dot(gradient(f, t.points[i]), t.normals[i]));
  }
}

HerglotzFit herglotz_least_squares(const BoundaryTrace& target, double k, int grid_size,
                                   double lambda) {
  require(lambda > 0.0, ErrorKind::PreconditionViolated, "regularization weight must be positive");
  require(grid_size >= 1 && k > 0.0, ErrorKind::InvalidArgument, "bad kernel grid or wavenumber");
  const std::size_t P = target.points.size();
  require(P > 0 && target.values.size() == P && target.normal_derivatives.size() == P,
          ErrorKind::InvalidArgument, "boundary trace is incomplete");
  const int M = grid_size;
  const double quad = 2 * pi / M;
  const double unit = std::sqrt(quad);  // h = unit * g has ||h||_2 = ||g||_{L2(S^1)}

  Eigen::MatrixXcd A(2 * P, M);
  Eigen::VectorXcd b(2 * P);
  for (std::size_t i = 0; i < P; ++i) {
    const double sw = std::sqrt(target.weights[i]);
    b(i) = sw * target.values[i];
    b(P + i) = sw * target.normal_derivatives[i] / k;
    for (int j = 0; j < M; ++j) {
      const Vec2 d = unit_vector(2 * pi * j / M);
      const cplx e = std::exp(I * k * dot(d, target.points[i]));
      A(i, j) = sw * quad * e / unit;
      A(P + i, j) = sw * quad * I * dot(d, target.normals[i]) * e / unit;
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  require(s.size() > 0 && s(0) > 0.0, ErrorKind::SingularSystem, "trace operator vanishes");
  const double hi = s(0) * s(0) + lambda;
  const double lo = s(s.size() - 1) * s(s.size() - 1) + lambda;
  require(lo / hi > 1e-15, ErrorKind::SingularSystem,
          "regularized normal equations are numerically singular");

  const Eigen::VectorXcd proj = svd.matrixU().adjoint() * b;
  Eigen::VectorXcd coeff(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) coeff(i) = proj(i) * s(i) / (s(i) * s(i) + lambda);
  const Eigen::VectorXcd h = svd.matrixV() * coeff;

  HerglotzFit fit;
  fit.field.k = k;
  fit.field.kernel.resize(M);
  for (int j = 0; j < M; ++j) fit.field.kernel[j] = h(j) / unit;
  fit.kernel_norm = h.norm();
  const double bn = b.norm();
  const double rn = (A * h - b).norm();
  fit.misfit = bn > 0.0 ? (rn / bn) * (rn / bn) : rn * rn;
  return fit;
}

}  // namespace cornerlab
