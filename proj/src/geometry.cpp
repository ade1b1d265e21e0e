#include "cornerlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cornerlab {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::EmptyDirectionCone: return "EmptyDirectionCone";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::DegenerateJet: return "DegenerateJet";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::ZeroField: return "ZeroField";
    case ErrorKind::ZeroSample: return "ZeroSample";
    case ErrorKind::EllipticityViolated: return "EllipticityViolated";
    case ErrorKind::SupportViolated: return "SupportViolated";
    case ErrorKind::SymbolTooSmall: return "SymbolTooSmall";
    case ErrorKind::NoContraction: return "NoContraction";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::TestFieldInvalid: return "TestFieldInvalid";
    case ErrorKind::NoRootInInterval: return "NoRootInInterval";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Sector Sector::make(Vec2 vertex, double theta_ref, double aperture, double radius) {
  require(aperture > 0.0 && aperture < pi, ErrorKind::InvalidArgument,
          "sector aperture must lie in (0, pi)");
  require(radius > 0.0, ErrorKind::InvalidArgument, "sector radius must be positive");
  return Sector{vertex, theta_ref, aperture, radius};
}

bool sector_contains(const Sector& s, Vec2 x) {
  const Vec2 rel = x - s.vertex;
  const double r = norm(rel);
  if (!(r > 0.0 && r < s.radius)) return false;
  double t = std::atan2(rel.y, rel.x) - s.theta_ref;
  t = std::remainder(t, 2 * pi);  // (-pi, pi]
  return t > 0.0 && t < s.aperture;
}

double direction_half_width(const DirectionCone& dc) {
  if (dc.delta >= 1.0) return -1.0;
  const double reach = std::acos(std::max(dc.delta, -1.0));
  return reach - dc.sector.aperture / 2;
}

std::vector<Vec2> direction_samples(const DirectionCone& dc, int m) {
  require(m >= 1, ErrorKind::InvalidArgument, "direction_samples needs m >= 1");
  const double w = direction_half_width(dc);
  require(w > 0.0, ErrorKind::EmptyDirectionCone,
          "delta >= cos(aperture/2): no direction clears both edges");
  const double mid = dc.sector.bisector_angle();
  std::vector<Vec2> out;
  out.reserve(m);
  if (m == 1) {
    out.push_back(unit_vector(mid));
    return out;
  }
  // Interior points of (-w, w); the endpoints themselves only reach d.x = delta.
  for (int i = 0; i < m; ++i) {
    const double t = -w + 2 * w * (i + 1) / (m + 1);
    out.push_back(unit_vector(mid + t));
  }
  return out;
}

std::optional<int> exceptional_angle(double psi0, int N, double rel_tol) {
  if (N < 0 || !(psi0 > 0.0)) return std::nullopt;
  const double x = psi0 * (1.0 + N) / pi;
  const double l = std::round(x);
  if (l < 1.0) return std::nullopt;
  if (std::abs(x - l) <= rel_tol * x) return static_cast<int>(l);
  return std::nullopt;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  require(n >= 3, ErrorKind::InvalidPolygon, "polygon needs at least 3 vertices");
  double scale = 0.0;
  for (const auto& v : vertices_) {
    require(std::isfinite(v.x) && std::isfinite(v.y), ErrorKind::InvalidPolygon,
            "non-finite vertex");
    scale = std::max(scale, norm(v - vertices_[0]));
  }
  require(scale > 0.0, ErrorKind::InvalidPolygon, "degenerate polygon");
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 c = vertices_[(i + 2) % n];
    const Vec2 e1 = b - a;
    const Vec2 e2 = c - b;
    require(norm(e1) > 1e-12 * scale, ErrorKind::InvalidPolygon, "repeated vertex");
    const double cr = cross(e1, e2);
    require(cr > 1e-12 * norm(e1) * norm(e2), ErrorKind::InvalidPolygon,
            "polygon must be counter-clockwise and strictly convex");
    turning += std::atan2(cr, dot(e1, e2));
  }
  // A star-shaped vertex list can turn left at every vertex and still wind twice.
  require(std::abs(turning - 2 * pi) < 1e-6, ErrorKind::InvalidPolygon,
          "vertex list winds more than once");
}

bool ConvexPolygon::contains(Vec2 x) const { return signed_distance(x) > 0.0; }

double ConvexPolygon::signed_distance(Vec2 x) const {
  const std::size_t n = vertices_.size();
  double inside_margin = std::numeric_limits<double>::infinity();
  bool inside = true;
  double outside_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 e = b - a;
    const double len = norm(e);
    const double side = cross(e, x - a) / len;  // > 0 on the interior side
    if (side <= 0.0) inside = false;
    inside_margin = std::min(inside_margin, side);
    const double t = std::clamp(dot(x - a, e) / (len * len), 0.0, 1.0);
    outside_dist = std::min(outside_dist, norm(x - (a + t * e)));
  }
  return inside ? inside_margin : -outside_dist;
}

double ConvexPolygon::area() const {
  double s = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(vertices_[i], vertices_[(i + 1) % n]);
  return 0.5 * s;
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (const auto& a : vertices_)
    for (const auto& b : vertices_) d = std::max(d, norm(a - b));
  return d;
}

double ConvexPolygon::shortest_edge() const {
  double e = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) e = std::min(e, norm(vertices_[(i + 1) % n] - vertices_[i]));
  return e;
}

Vec2 ConvexPolygon::centroid() const {
  Vec2 c{};
  for (const auto& v : vertices_) c = c + v;
  return (1.0 / vertices_.size()) * c;
}

Vec2 ConvexPolygon::lower_corner() const {
  Vec2 lo = vertices_[0];
  for (const auto& v : vertices_) lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
  return lo;
}

Vec2 ConvexPolygon::upper_corner() const {
  Vec2 hi = vertices_[0];
  for (const auto& v : vertices_) hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  return hi;
}

ConvexPolygon ConvexPolygon::regular(int n, Vec2 center, double circumradius, double rotation) {
  std::vector<Vec2> v;
  for (int i = 0; i < n; ++i) v.push_back(center + circumradius * unit_vector(rotation + 2 * pi * i / n));
  return ConvexPolygon(std::move(v));
}

std::vector<Sector> corner_sectors(const ConvexPolygon& p, double eps) {
  require(eps > 0.0, ErrorKind::InvalidArgument, "sector radius must be positive");
  require(eps < 0.5 * p.shortest_edge(), ErrorKind::EpsilonTooLarge,
          "sector radius must be below half the shortest edge");
  std::vector<Sector> out;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v = p.vertex(i);
    const Vec2 to_next = p.vertex(i + 1) - v;
    const Vec2 to_prev = p.vertex(i + n - 1) - v;
    // Counter-clockwise from the outgoing edge to the incoming one sweeps the interior.
    const double theta = std::atan2(to_next.y, to_next.x);
    const double aperture = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
    out.push_back(Sector::make(v, theta, aperture, eps));
  }
  return out;
}

}  // namespace cornerlab
