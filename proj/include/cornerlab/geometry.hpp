#pragma once

#include <optional>
#include <vector>

#include "cornerlab/errors.hpp"
#include "cornerlab/types.hpp"

namespace cornerlab {

// Open truncated cone {vertex + r(cos t, sin t) : 0 < r < radius, theta_ref < t < theta_ref + aperture}.
struct Sector {
  Vec2 vertex;
  double theta_ref = 0.0;
  double aperture = pi / 2;
  double radius = 1.0;

  // Throws InvalidArgument unless 0 < aperture < pi and radius > 0.
  static Sector make(Vec2 vertex, double theta_ref, double aperture, double radius);

  // Point at local polar coordinates; psi is measured from the first edge.
  Vec2 point(double r, double psi) const {
    return vertex + r * unit_vector(theta_ref + psi);
  }
  Vec2 first_edge() const { return unit_vector(theta_ref); }
  Vec2 second_edge() const { return unit_vector(theta_ref + aperture); }
  double bisector_angle() const { return theta_ref + aperture / 2; }
};

bool sector_contains(const Sector& s, Vec2 x);

struct DirectionCone {
  Sector sector;
  double delta = 0.0;
};

// Largest t such that every direction within t of the bisector clears delta on both edges.
// Non-positive when the cone is empty.
double direction_half_width(const DirectionCone& dc);

// m unit vectors spread symmetrically about the bisector, strictly inside the admissible cone.
std::vector<Vec2> direction_samples(const DirectionCone& dc, int m);

// l >= 1 with psi0 (1 + N) = l pi, up to rel_tol on psi0 (1 + N) / pi.
std::optional<int> exceptional_angle(double psi0, int N, double rel_tol = 1e-12);

class ConvexPolygon {
 public:
  // Vertices counter-clockwise, strictly convex. Throws InvalidPolygon otherwise.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  bool contains(Vec2 x) const;  // open interior
  // Positive inside, negative outside; magnitude is the distance to the boundary.
  double signed_distance(Vec2 x) const;
  double area() const;
  double diameter() const;
  double shortest_edge() const;
  Vec2 centroid() const;
  Vec2 lower_corner() const;  // bounding box
  Vec2 upper_corner() const;

  static ConvexPolygon regular(int n, Vec2 center, double circumradius, double rotation = 0.0);

 private:
  std::vector<Vec2> vertices_;
};

std::vector<Sector> corner_sectors(const ConvexPolygon& p, double eps);

}  // namespace cornerlab
