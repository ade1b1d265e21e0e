#include "cornerlab/medium.hpp"

#include <algorithm>
#include <cmath>

namespace cornerlab {

namespace {

double dist2(Vec2 a, Vec2 b) {
  const Vec2 d = a - b;
  return dot(d, d);
}

// Partition of unity interpolating the vertices: w_i = prod_{j != i} |x - x_j|^4, normalized.
// Near x_i the other weights vanish to fourth order.
std::vector<double> vertex_weights(const std::vector<Vec2>& v, Vec2 x) {
  const std::size_t n = v.size();
  std::vector<double> d(n), w(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = dist2(x, v[i]) * dist2(x, v[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0.0) {
      std::fill(w.begin(), w.end(), 0.0);
      w[i] = 1.0;
      return w;
    }
  }
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) w[i] *= d[j];
    total += w[i];
  }
  for (auto& wi : w) wi /= total;
  return w;
}

// (1 - exp(-|x - x_i|^2 / l^2))^(p/2) ~ (|x - x_i| / l)^p near the vertex, ~1 away from it.
double vanishing(Vec2 x, Vec2 vertex, double l, double p) {
  if (p <= 0) return 1.0;
  return std::pow(-std::expm1(-dist2(x, vertex) / (l * l)), p / 2);
}

MediumSpec polygon_medium(const MediumConfig& cfg) {
  ConvexPolygon hull(cfg.vertices);
  const std::size_t nv = hull.size();
  std::vector<CornerSpec> corners = cfg.corners;
  if (corners.size() == 1) corners.assign(nv, corners.front());
  require(corners.size() == nv, ErrorKind::InvalidArgument,
          "corners must list one record per vertex (or a single shared record)");
  for (const auto& c : corners) {
    require(c.sigma > 0, ErrorKind::InvalidArgument, "sigma must be positive");
    require(c.gamma_order >= 0, ErrorKind::InvalidArgument, "gamma_order must be nonnegative");
  }
  for (const auto& b : cfg.c_bumps)
    require(b.width > 0, ErrorKind::InvalidArgument, "bump width must be positive");

  const auto verts = hull.vertices();
  const double l = 0.3 * hull.shortest_edge();

  auto rho_part = [verts, corners](Vec2 x) {
    const auto w = vertex_weights(verts, x);
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * corners[i].rho0;
    return s;
  };
  auto jump_part = [verts, corners, l](Vec2 x) {
    const auto w = vertex_weights(verts, x);
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (corners[i].gamma_order > 0 || corners[i].gamma0 == 0.0) continue;
      double damp = 1.0;  // keep the jump out of vanishing corners
      for (std::size_t j = 0; j < w.size(); ++j)
        if (corners[j].gamma_order > 0) damp *= vanishing(x, verts[j], l, corners[j].gamma_order);
      s += w[i] * corners[i].gamma0 * damp;
    }
    return s;
  };
  auto bulk_part = [verts, corners, l, amp = cfg.a_bulk](Vec2 x) {
    if (amp == 0.0) return 0.0;
    double f = amp;
    for (std::size_t i = 0; i < verts.size(); ++i)
      f *= vanishing(x, verts[i], l, corners[i].gamma_order);
    return f;
  };
  auto bump_part = [verts, l, bumps = cfg.c_bumps](Vec2 x) {
    double s = 0;
    for (const auto& b : bumps) s += b.amplitude * std::exp(-dist2(x, b.center) / (b.width * b.width));
    if (s == 0.0) return 0.0;
    for (const auto& v : verts) s *= vanishing(x, v, l, 2.0);
    return s;
  };

  MediumSpec m{"polygon", hull, corners, {}, {}, {}, 1.0, false, std::nullopt};
  m.a = [hull, jump_part, bulk_part](Vec2 x) {
    if (hull.signed_distance(x) <= 0) return 1.0;
    return 1.0 + jump_part(x) + bulk_part(x);
  };
  m.c = [hull, rho_part, bump_part](Vec2 x) {
    if (hull.signed_distance(x) <= 0) return 1.0;
    return 1.0 + rho_part(x) + bump_part(x);
  };
  m.interface = [hull](Vec2 x) { return hull.signed_distance(x); };
  return m;
}

MediumSpec disc_medium(const MediumConfig& cfg) {
  require(cfg.radius > 0, ErrorKind::InvalidArgument, "disc radius must be positive");
  require(cfg.a_in > 0, ErrorKind::EllipticityViolated, "a inside the disc must be positive");
  const double half = cfg.radius * 1.05;
  std::vector<Vec2> box = {cfg.center + Vec2{-half, -half}, cfg.center + Vec2{half, -half},
                           cfg.center + Vec2{half, half}, cfg.center + Vec2{-half, half}};
  DiscData d{cfg.center, cfg.radius, cfg.a_in, cfg.c_in};
  MediumSpec m{"disc", ConvexPolygon(box), {}, {}, {}, {}, 1.0, false, d};
  m.a = [d](Vec2 x) { return norm(x - d.center) < d.radius ? d.a_in : 1.0; };
  m.c = [d](Vec2 x) { return norm(x - d.center) < d.radius ? d.c_in : 1.0; };
  m.interface = [d](Vec2 x) { return d.radius - norm(x - d.center); };
  return m;
}

}  // namespace

MediumSpec MediumSpec::vacuum(const ConvexPolygon& hull) {
  MediumSpec m{"vacuum", hull, {}, [](Vec2) { return 1.0; }, [](Vec2) { return 1.0; },
               [hull](Vec2 x) { return hull.signed_distance(x); }, 1.0, true, std::nullopt};
  return m;
}

MediumSpec assemble_medium(const MediumConfig& cfg) {
  if (cfg.kind != "polygon" && cfg.kind != "disc")
    fail(ErrorKind::InvalidArgument, "unknown medium kind '" + cfg.kind + "'");
  MediumSpec m = cfg.kind == "polygon" ? polygon_medium(cfg) : disc_medium(cfg);

  // Sample the bounding box (with a margin) for ellipticity, support and contrast.
  const Vec2 lo = m.hull.lower_corner();
  const Vec2 hi = m.hull.upper_corner();
  const double pad = 0.1 * std::max(hi.x - lo.x, hi.y - lo.y);
  const int n = 161;
  double amin = std::numeric_limits<double>::infinity();
  double contrast = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 x{lo.x - pad + (hi.x - lo.x + 2 * pad) * i / (n - 1),
                   lo.y - pad + (hi.y - lo.y + 2 * pad) * j / (n - 1)};
      const double a = m.a(x);
      const double c = m.c(x);
      amin = std::min(amin, a);
      const double dev = std::max(std::abs(a - 1), std::abs(c - 1));
      contrast = std::max(contrast, dev);
      if (m.hull.signed_distance(x) < 0 && dev > 0)
        fail(ErrorKind::SupportViolated, "contrast found outside the hull");
    }
  // Vertices themselves carry the corner values.
  for (const auto& v : m.hull.vertices()) amin = std::min(amin, m.a(v));
  require(amin > 0, ErrorKind::EllipticityViolated,
          "a drops to " + std::to_string(amin) + ", must stay positive");
  m.a0 = amin;
  m.no_contrast = contrast == 0.0;
  return m;
}

std::vector<Vec2> square_vertices(double side, Vec2 center, double rotation) {
  std::vector<Vec2> v;
  const double r = side / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) v.push_back(center + r * unit_vector(rotation + pi / 4 + i * pi / 2));
  // Start at the lower-left vertex for an unrotated square.
  std::rotate(v.begin(), v.begin() + 2, v.end());
  return v;
}

}  // namespace cornerlab
