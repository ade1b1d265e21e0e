#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace cornerlab {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Complex 2-vector. dot() is the bilinear product (no conjugation).
struct CVec2 {
  cplx x{};
  cplx y{};

  friend CVec2 operator+(CVec2 a, CVec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend CVec2 operator-(CVec2 a, CVec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend CVec2 operator*(cplx s, CVec2 a) { return {s * a.x, s * a.y}; }
  friend CVec2 operator*(CVec2 a, cplx s) { return {s * a.x, s * a.y}; }
};

inline CVec2 to_cvec(Vec2 a) { return {a.x, a.y}; }
inline cplx dot(CVec2 a, CVec2 b) { return a.x * b.x + a.y * b.y; }
inline cplx dot(CVec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline cplx dot(Vec2 a, CVec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(CVec2 a) { return std::sqrt(std::norm(a.x) + std::norm(a.y)); }

}  // namespace cornerlab
