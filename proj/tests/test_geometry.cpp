#include <doctest.h>

#include "cornerlab/geometry.hpp"

using namespace cornerlab;

TEST_CASE("sector membership") {
  const Sector s = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  CHECK(sector_contains(s, {0.3, 0.3}));
  CHECK_FALSE(sector_contains(s, {-0.1, 0.1}));
  CHECK_FALSE(sector_contains(s, {0.8, 0.8}));
  CHECK_FALSE(sector_contains(s, {0.0, 0.0}));

  const Sector rotated = Sector::make({1, 2}, 2.0, 1.0, 0.5);
  CHECK(sector_contains(rotated, rotated.point(0.2, 0.5)));
  CHECK_FALSE(sector_contains(rotated, rotated.point(0.2, 1.1)));
}

TEST_CASE("sector construction rejects non-convex apertures") {
  CHECK_THROWS_AS(Sector::make({0, 0}, 0.0, pi, 1.0), Error);
  CHECK_THROWS_AS(Sector::make({0, 0}, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(Sector::make({0, 0}, 0.0, 1.0, -1.0), Error);
}

TEST_CASE("direction samples clear both edges") {
  const Sector s = Sector::make({0, 0}, 0.0, pi / 2, 1.0);
  const auto one = direction_samples({s, 0.5}, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].x == doctest::Approx(std::sqrt(0.5)));
  CHECK(one[0].y == doctest::Approx(std::sqrt(0.5)));

  try {
    direction_samples({s, 0.8}, 1);
    FAIL("expected an empty cone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyDirectionCone);
  }

  const Sector narrow = Sector::make({0, 0}, 0.0, pi / 3, 1.0);
  const auto three = direction_samples({narrow, 0.0}, 3);
  REQUIRE(three.size() == 3);
  for (const Vec2 d : three) {
    CHECK(dot(d, narrow.first_edge()) > 0);
    CHECK(dot(d, narrow.second_edge()) > 0);
  }
  CHECK(norm(three[0] - three[1]) > 1e-6);
  CHECK(norm(three[1] - three[2]) > 1e-6);
}

TEST_CASE("exceptional angles") {
  CHECK(exceptional_angle(pi / 2, 1) == 1);
  CHECK_FALSE(exceptional_angle(pi / 2, 0).has_value());
  CHECK(exceptional_angle(pi / 3, 2) == 1);
  CHECK(exceptional_angle(2 * pi / 3, 2) == 2);
  CHECK_FALSE(exceptional_angle(2.0, 6).has_value());
  // Tolerance is relative on psi0 (1 + N) / pi.
  CHECK(exceptional_angle(1.5707963, 1, 1e-6) == 1);
  CHECK_FALSE(exceptional_angle(1.5707963, 1).has_value());
}

TEST_CASE("polygon validation and measurements") {
  const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(square.area() == doctest::Approx(1.0));
  CHECK(square.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(square.shortest_edge() == doctest::Approx(1.0));
  CHECK(square.signed_distance({0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(square.signed_distance({2.0, 0.5}) == doctest::Approx(-1.0));
  CHECK(square.contains({0.2, 0.9}));
  CHECK_FALSE(square.contains({1.2, 0.9}));

  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), Error);          // clockwise
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}}), Error);        // collinear
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {0.5, 0.5}, {0, 2}}), Error);      // reflex
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), Error);
}

TEST_CASE("corner sectors") {
  const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto sq = corner_sectors(square, 0.2);
  REQUIRE(sq.size() == 4);
  for (const auto& s : sq) {
    CHECK(s.aperture == doctest::Approx(pi / 2));
    // The sector opens into the polygon.
    CHECK(square.contains(s.point(0.1, s.aperture / 2)));
  }

  const ConvexPolygon tri = ConvexPolygon::regular(3, {0, 0}, 1.0 / std::sqrt(3.0));
  const auto ts = corner_sectors(tri, 0.1);
  REQUIRE(ts.size() == 3);
  for (const auto& s : ts) CHECK(s.aperture == doctest::Approx(pi / 3));

  try {
    corner_sectors(square, 0.6);
    FAIL("expected EpsilonTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EpsilonTooLarge);
  }
}
