#pragma once

#include <vector>

#include "cornerlab/geometry.hpp"

namespace cornerlab {

struct QuadNode {
  double x = 0.0;
  double w = 0.0;
};

// Gauss-Legendre rule on [-1, 1]; n in {7, 10, 15, 20, 30}.
const std::vector<QuadNode>& gauss_legendre(int n);

// Appends the n-point rule mapped to [a, b], split into `panels` equal pieces.
void append_gauss(std::vector<QuadNode>& out, double a, double b, int n, int panels = 1);

// Radial nodes for int_0^R f(r) r dr with f ~ r^p near 0: geometric panels (ratio 2) down to
// R 2^-levels, each subdivided so that its length times `rate` stays below 3, plus a graded
// innermost panel. Weights include the Jacobian r.
std::vector<QuadNode> radial_nodes(double R, double rate, double radial_power, int levels = 40);

// Same geometric panels for a plain line integral int_0^R f(r) dr.
std::vector<QuadNode> edge_nodes(double R, double rate, int levels = 40);

// Angular nodes on [0, width] with enough panels for phase variation rate * width.
std::vector<QuadNode> angular_nodes(double width, double rate);

// Tensor-product Gauss rule on a triangle (collapsed square), subdivided `splits` times per edge.
struct PlanarNode {
  Vec2 p;
  double w = 0.0;
};
std::vector<PlanarNode> triangle_nodes(Vec2 a, Vec2 b, Vec2 c, int n, int splits);
std::vector<PlanarNode> polygon_nodes(const ConvexPolygon& poly, int n, double cell);

}  // namespace cornerlab
