#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/geometry.hpp"

namespace cornerlab {

// Contrast data at one hull vertex. gamma_order is the vanishing order beta of a - 1 at the
// vertex (0 means a jump of size gamma0).
struct CornerSpec {
  double rho0 = 0.0;
  double gamma_order = 0.0;
  double gamma0 = 0.0;
  double sigma = 0.5;
};

struct BumpSpec {
  Vec2 center;
  double width = 0.3;
  double amplitude = 0.0;
};

struct MediumConfig {
  std::string kind = "polygon";  // "polygon" or "disc"
  std::vector<Vec2> vertices;
  std::vector<CornerSpec> corners;  // one per vertex, or a single entry applied to all
  double a_bulk = 0.0;              // conductivity bump vanishing at vertices to their order
  std::vector<BumpSpec> c_bumps;    // potential bumps, vanishing quadratically at vertices
  Vec2 center;                      // disc
  double radius = 1.0;
  double a_in = 1.0;
  double c_in = 1.0;
};

struct DiscData {
  Vec2 center;
  double radius = 1.0;
  double a_in = 1.0;
  double c_in = 1.0;
};

struct MediumSpec {
  std::string kind;
  ConvexPolygon hull;
  std::vector<CornerSpec> corners;  // empty for discs
  std::function<double(Vec2)> a;
  std::function<double(Vec2)> c;
  // Signed distance to the coefficient discontinuity set, positive inside.
  std::function<double(Vec2)> interface;
  double a0 = 1.0;  // min a
  bool no_contrast = false;
  std::optional<DiscData> disc;

  static MediumSpec vacuum(const ConvexPolygon& hull);
};

// Builds a and c from the corner records, blended by a vertex partition of unity, and checks
// ellipticity and support. Throws EllipticityViolated, SupportViolated, InvalidArgument.
MediumSpec assemble_medium(const MediumConfig& config);

// Axis-aligned square of the given side (then rotated), counter-clockwise from the lower-left.
std::vector<Vec2> square_vertices(double side, Vec2 center = {}, double rotation = 0.0);

}  // namespace cornerlab
