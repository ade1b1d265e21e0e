#include "cornerlab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace cornerlab {

namespace {

template <int N>
std::vector<QuadNode> build_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  std::vector<QuadNode> rule;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      rule.push_back({0.0, w[i]});
    } else {
      rule.push_back({x[i], w[i]});
      rule.push_back({-x[i], w[i]});
    }
  }
  std::sort(rule.begin(), rule.end(), [](QuadNode a, QuadNode b) { return a.x < b.x; });
  return rule;
}

}  // namespace

const std::vector<QuadNode>& gauss_legendre(int n) {
  static const std::vector<QuadNode> r7 = build_rule<7>();
  static const std::vector<QuadNode> r10 = build_rule<10>();
  static const std::vector<QuadNode> r15 = build_rule<15>();
  static const std::vector<QuadNode> r20 = build_rule<20>();
  static const std::vector<QuadNode> r30 = build_rule<30>();
  switch (n) {
    case 7: return r7;
    case 10: return r10;
    case 15: return r15;
    case 20: return r20;
    case 30: return r30;
    default: throw std::invalid_argument("gauss_legendre: unsupported order");
  }
}

void append_gauss(std::vector<QuadNode>& out, double a, double b, int n, int panels) {
  const auto& rule = gauss_legendre(n);
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * step;
    const double half = 0.5 * step;
    for (const auto& q : rule) out.push_back({lo + half * (1.0 + q.x), half * q.w});
  }
}

std::vector<QuadNode> radial_nodes(double R, double rate, double radial_power, int levels) {
  std::vector<QuadNode> out;
  const double inner = std::ldexp(R, -levels);
  // Graded innermost panel: r = inner u^q, q = 1/(p+2), flattens r^(p+1) dr.
  {
    const double q = 1.0 / (radial_power + 2.0);
    std::vector<QuadNode> u;
    append_gauss(u, 0.0, 1.0, 20);
    for (const auto& n : u) {
      const double r = inner * std::pow(n.x, q);
      out.push_back({r, n.w * inner * inner * q * std::pow(n.x, 2 * q - 1)});
    }
  }
  for (int lev = levels; lev >= 1; --lev) {
    const double lo = std::ldexp(R, -lev);
    const double hi = 2 * lo;
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * rate / 3.0)));
    std::vector<QuadNode> seg;
    append_gauss(seg, lo, hi, 20, panels);
    for (const auto& n : seg) out.push_back({n.x, n.w * n.x});
  }
  return out;
}

std::vector<QuadNode> edge_nodes(double R, double rate, int levels) {
  std::vector<QuadNode> out;
  append_gauss(out, 0.0, std::ldexp(R, -levels), 20);
  for (int lev = levels; lev >= 1; --lev) {
    const double lo = std::ldexp(R, -lev);
    append_gauss(out, lo, 2 * lo, 20, std::max(1, static_cast<int>(std::ceil(lo * rate / 3.0))));
  }
  return out;
}

std::vector<QuadNode> angular_nodes(double width, double rate) {
  std::vector<QuadNode> out;
  const int panels = std::max(1, static_cast<int>(std::ceil(width * rate / 3.0)));
  append_gauss(out, 0.0, width, 20, panels);
  return out;
}

std::vector<PlanarNode> triangle_nodes(Vec2 a, Vec2 b, Vec2 c, int n, int splits) {
  std::vector<PlanarNode> out;
  const auto& rule = gauss_legendre(n);
  const Vec2 e1 = (1.0 / splits) * (b - a);
  const Vec2 e2 = (1.0 / splits) * (c - a);
  const double jac = std::abs(cross(e1, e2));
  auto emit = [&](Vec2 p0, Vec2 p1, Vec2 p2) {
    // Collapsed map (s, t) -> p0 + s (p1 - p0) + s t (p2 - p1), s, t in [0, 1].
    for (const auto& qs : rule) {
      const double s = 0.5 * (1 + qs.x);
      for (const auto& qt : rule) {
        const double t = 0.5 * (1 + qt.x);
        const Vec2 p = p0 + s * (p1 - p0) + (s * t) * (p2 - p1);
        out.push_back({p, 0.25 * qs.w * qt.w * s * jac});
      }
    }
  };
  for (int i = 0; i < splits; ++i) {
    for (int j = 0; i + j < splits; ++j) {
      const Vec2 p = a + static_cast<double>(i) * e1 + static_cast<double>(j) * e2;
      emit(p, p + e1, p + e2);
      if (i + j + 1 < splits) emit(p + e1, p + e1 + e2, p + e2);
    }
  }
  return out;
}

std::vector<PlanarNode> polygon_nodes(const ConvexPolygon& poly, int n, double cell) {
  std::vector<PlanarNode> out;
  const Vec2 c = poly.centroid();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly.vertex(i);
    const Vec2 b = poly.vertex(i + 1);
    const double size = std::max({norm(a - c), norm(b - c), norm(b - a)});
    const int splits = std::max(1, static_cast<int>(std::ceil(size / cell)));
    auto tri = triangle_nodes(c, a, b, n, splits);
    out.insert(out.end(), tri.begin(), tri.end());
  }
  return out;
}

}  // namespace cornerlab
