#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatlab/geometry.hpp"
#include "heatlab/heat_content.hpp"

using namespace heatlab;
using std::numbers::pi;

namespace {
Point p(std::initializer_list<double> xs) {
  Point v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
const auto R1 = AmbientSpace::euclidean(1);
const auto R2 = AmbientSpace::euclidean(2);
const auto R3 = AmbientSpace::euclidean(3);
}  // namespace

TEST_CASE("measure of basic shapes") {
  CHECK(measure(Domain::ball(R2, p({0, 0}), 1)) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(measure(Domain::annulus(R2, p({0, 0}), 2, 3)) == doctest::Approx(5 * pi).epsilon(1e-15));
  CHECK(measure(two_ball_domain(0.05, 1)) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(measure(Domain::box(R2, p({0, 0}), p({3, 4}))) == 12);
  CHECK(measure(Domain::ball(R3, p({0, 0, 0}), 1)) == doctest::Approx(4 * pi / 3).epsilon(1e-15));
  CHECK(measure(Domain::arc(AmbientSpace::circle(2 * pi), 1.0, pi)) == pi);
}

TEST_CASE("unit ball volume matches the Gamma formula") {
  for (int m = 1; m <= 9; ++m)
    CHECK(unit_ball_volume(m) == doctest::Approx(std::pow(pi, 0.5 * m) / std::tgamma(0.5 * m + 1)).epsilon(1e-14));
  CHECK(unit_ball_volume(1) == 2.0);
}

TEST_CASE("diameter") {
  CHECK(diameter(Domain::ball(R3, p({0, 0, 0}), 0.5)) == doctest::Approx(1.0));
  CHECK(diameter(two_ball_domain(0.05, 2)) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(diameter(two_ball_domain(0.05, 1)) == doctest::Approx(2.2).epsilon(1e-14));
  CHECK(diameter(Domain::box(R2, p({0, 0}), p({3, 4}))) == doctest::Approx(5.0));
  const auto circle = AmbientSpace::circle(2 * pi);
  CHECK(diameter(Domain::arc(circle, 0, 2 * pi)) == doctest::Approx(pi));
  CHECK(diameter(Domain::arc(circle, 0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("contains is strict") {
  const auto disc = Domain::ball(R2, p({0, 0}), 1);
  CHECK(contains(disc, p({0, 0})));
  CHECK_FALSE(contains(disc, p({1, 0})));
  const auto omega = Domain::disjoint_union({Domain::ball(R2, p({0, 0}), 1), Domain::annulus(R2, p({0, 0}), 2, 10)});
  CHECK_FALSE(contains(omega, p({1.5, 0})));
  CHECK(contains(omega, p({2.5, 0})));
  CHECK_THROWS_AS(contains(disc, p({0, 0, 0})), DomainError);
  const auto arc = Domain::arc(AmbientSpace::circle(2 * pi), 6.0, 1.0);  // wraps past 2 pi
  CHECK(contains(arc, p({0.5})));
  CHECK(contains(arc, p({6.5 - 2 * pi})));
  CHECK_FALSE(contains(arc, p({1.5})));
}

TEST_CASE("invalid construction names the violated invariant") {
  CHECK_THROWS_WITH_AS(Domain::ball(R2, p({0, 0}), -1), doctest::Contains("radius r must be > 0"), InvalidGeometry);
  CHECK_THROWS_AS(Domain::annulus(R2, p({0, 0}), 3, 2), InvalidGeometry);
  CHECK_THROWS_AS(Domain::box(R2, p({0, 0}), p({1, 0})), InvalidGeometry);
  CHECK_THROWS_AS(Domain::arc(AmbientSpace::circle(1.0), 0, 1.5), InvalidGeometry);
  CHECK_THROWS_AS(Domain::disjoint_union({Domain::ball(R2, p({0, 0}), 1), Domain::ball(R2, p({1.5, 0}), 1)}),
                  InvalidGeometry);
  CHECK_THROWS_AS(AmbientSpace::euclidean(0), InvalidGeometry);
  CHECK_THROWS_AS(AmbientSpace::circle(-1), InvalidGeometry);
}

TEST_CASE("unions flatten and expose leaves") {
  const auto a = Domain::ball(R1, p({0}), 0.5);
  const auto b = Domain::ball(R1, p({2}), 0.5);
  const auto c = Domain::ball(R1, p({4}), 0.5);
  const auto u = Domain::disjoint_union({Domain::disjoint_union({a, b}), c});
  CHECK(u.leaves().size() == 3);
  CHECK(measure(u) == doctest::Approx(3.0));
  const auto boxes = as_boxes(u);
  REQUIRE(boxes);
  CHECK(boxes->size() == 3);
  CHECK((*boxes)[1].lo[0] == 1.5);
}

TEST_CASE("uniform samples stay inside and have the right mean") {
  const auto annulus = Domain::annulus(R2, p({1, -1}), 0.5, 1.0);
  RandomStream rs(7, 0);
  Point mean = Point::Zero(2);
  double r2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Point x = sample_uniform(annulus, rs);
    REQUIRE(contains(annulus, x));
    mean += x / n;
    r2 += (x - p({1, -1})).squaredNorm() / n;
  }
  CHECK((mean - p({1, -1})).norm() < 0.01);
  // E|x - c|^2 = (r2^4 - r1^4) / (2 (r2^2 - r1^2))
  CHECK(r2 == doctest::Approx((1 - 0.0625) / (2 * 0.75)).epsilon(5e-3));

  RandomStream a(11, 3), b(11, 3);
  const auto ball = Domain::ball(R3, p({0, 0, 0}), 2);
  CHECK(sample_uniform(ball, a) == sample_uniform(ball, b));
}

TEST_CASE("radial profile of concentric parts") {
  const auto omega = Domain::disjoint_union({Domain::ball(R2, p({0, 0}), 1), Domain::annulus(R2, p({0, 0}), 2, 3)});
  const auto prof = radial_profile(omega);
  REQUIRE(prof);
  REQUIRE(prof->shells.size() == 2);
  CHECK(prof->shells[0].lo == 0);
  CHECK(prof->shells[1].hi == 3);
  CHECK_FALSE(radial_profile(two_ball_domain(0.05, 2)));
}

TEST_CASE("wrap_centered maps into [-L/2, L/2)") {
  CHECK(wrap_centered(0.25, 1.0) == doctest::Approx(0.25));
  CHECK(wrap_centered(0.75, 1.0) == doctest::Approx(-0.25));
  CHECK(wrap_centered(-3.25, 1.0) == doctest::Approx(-0.25));
}
