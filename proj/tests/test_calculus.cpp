#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatlab/calculus.hpp"
#include "heatlab/theorems.hpp"

using namespace heatlab;
using std::numbers::pi;

namespace {
Point p(std::initializer_list<double> xs) {
  Point v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
const Domain disc = Domain::ball(AmbientSpace::euclidean(2), p({0, 0}), 1);
const Domain unit_interval = Domain::ball(AmbientSpace::euclidean(1), p({0.5}), 0.5);

Curve analytic_curve(const std::vector<double>& ts, double (*f)(double)) {
  Curve c;
  c.t = ts;
  for (double t : ts) {
    Estimate e;
    e.value = f(t);
    e.method = Method::exact1d;
    c.points.push_back(e);
  }
  return c;
}
}  // namespace

TEST_CASE("derivative signs on the disc") {
  ContentParams mc;
  mc.method = Method::mc;
  for (double t : {0.1, 1.0, 10.0}) {
    const auto d1 = dH(disc, InitialDatum::one(), t, 1);
    const auto d2 = dH(disc, InitialDatum::one(), t, 2);
    CHECK(d1.method == Method::radial_quad);
    CHECK(d1.value + d1.uncertainty(4) < 0);
    CHECK(d2.value - d2.uncertainty(4) >= 0);
    const auto m1 = dH(disc, InitialDatum::one(), t, 1, mc);
    CHECK(m1.std_error > 0);
    CHECK(m1.value + 4 * m1.std_error < 0);
    CHECK(std::abs(m1.value - d1.value) < 4 * m1.std_error + d1.abs_error);
  }
}

TEST_CASE("analytic derivatives against finite differences") {
  ContentParams fd;
  fd.method = Method::finite_difference;
  for (int order : {1, 2}) {
    const auto a = dH(disc, InitialDatum::one(), 1.0, order);
    const auto f = dH(disc, InitialDatum::one(), 1.0, order, fd);
    CHECK(f.method == Method::finite_difference);
    CHECK(a.value == doctest::Approx(f.value).epsilon(1e-3));
  }
  // closed form for the unit interval: H'(t) = -(1 - e^{-1/(4t)}) / sqrt(pi t)
  for (double t : {0.01, 0.3, 4.0}) {
    const double exact = -(1 - std::exp(-0.25 / t)) / std::sqrt(pi * t);
    const auto a = dH(unit_interval, InitialDatum::one(), t, 1);
    CHECK(a.method == Method::exact1d);
    CHECK(a.value == doctest::Approx(exact).epsilon(1e-10));
    CHECK(dH(unit_interval, InitialDatum::one(), t, 1, fd).value == doctest::Approx(exact).epsilon(1e-7));
  }
  CHECK(dH(disc, InitialDatum::one(), 5e-4, 1).low_confidence);
  CHECK_THROWS_AS(dH(disc, InitialDatum::one(), 0.0, 1), DomainError);
  CHECK_THROWS_AS(dH(disc, InitialDatum::one(), 1.0, 3), DomainError);
}

TEST_CASE("dH curve matches pointwise values") {
  const auto grid = log_grid(0.1, 2, 4);
  const auto c = dH_curve(disc, InitialDatum::one(), grid, 2);
  REQUIRE(c.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(c.points[i].value == doctest::Approx(dH(disc, InitialDatum::one(), grid[i], 2).value).epsilon(1e-12));
}

TEST_CASE("scans of an analytic curve") {
  const auto c = analytic_curve(lin_grid(0, 3, 10), [](double t) { return std::exp(-t); });
  const auto dec = scan(c, Property::decreasing);
  CHECK(dec.verdict == Verdict::pass);
  CHECK(dec.checks == 9);
  CHECK_FALSE(dec.stochastic);
  const auto mid = scan(c, Property::midpoint_convex);
  CHECK(mid.verdict == Verdict::pass);
  CHECK(mid.checks == 20);  // arithmetic triples among 10 equally spaced points
  CHECK(scan(c, Property::strictly_midpoint_convex).verdict == Verdict::pass);

  const auto up = analytic_curve(lin_grid(0, 3, 10), [](double t) { return std::sqrt(t); });
  const auto r = scan(up, Property::decreasing);
  CHECK(r.violation_found());
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().margin < 0);
  CHECK(scan(up, Property::midpoint_convex).violation_found());

  const auto two = analytic_curve({0.0, 1.0}, [](double t) { return -t; });
  CHECK_THROWS_AS(scan(two, Property::decreasing), ConfigurationError);
  const auto no_triples = analytic_curve({0.0, 1.0, 3.0}, [](double t) { return -t; });
  CHECK_THROWS_AS(scan(no_triples, Property::midpoint_convex), ConfigurationError);
}

TEST_CASE("stochastic scans are three-way") {
  Curve c;
  c.t = {0.0, 1.0, 2.0};
  for (double v : {1.0, 0.5, 0.49}) {
    Estimate e;
    e.value = v;
    e.std_error = 0.01;
    e.n = 10000;
    e.method = Method::mc;
    c.points.push_back(e);
  }
  c.covariance = Eigen::MatrixXd::Identity(3, 3) * 1e-4;
  const auto r = scan(c, Property::decreasing);
  CHECK(r.stochastic);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.z_effective > 4);
  c.points[2].value = 0.3;
  CHECK(scan(c, Property::decreasing).verdict == Verdict::pass);
  c.points[2].value = 0.9;
  CHECK(scan(c, Property::decreasing).verdict == Verdict::fail);
  // correlated noise shrinks the variance of differences
  c.points[2].value = 0.49;
  c.covariance = Eigen::MatrixXd::Constant(3, 3, 1e-4 * 0.999) + Eigen::MatrixXd::Identity(3, 3) * 1e-7;
  CHECK(scan(c, Property::decreasing).verdict == Verdict::pass);
}

TEST_CASE("the ball-plus-annulus loss is not monotone") {
  const double c = cm_threshold(2).c_m;
  const auto th = cm_threshold(2).theta_star;
  ContentParams p;
  p.method = Method::mc_exterior;
  p.samples = 2'000'000;
  const auto f = heat_loss_curve(annulus_experiment_domain(2, c), annulus_experiment_datum(2), {0.0, 1.0, th}, p);
  // H = H(0) - F, so H decreasing means F increasing; F(1) > F(theta) breaks it
  Curve h = f;
  for (auto& e : h.points) e.value = -e.value;
  const auto r = scan(h, Property::decreasing);
  CHECK(r.violation_found());
}

TEST_CASE("radial power datum breaks midpoint convexity near zero") {
  const Domain seg = Domain::ball(AmbientSpace::euclidean(1), p({0}), 1);
  ContentParams q;
  q.method = Method::radial_quad;
  q.quad = {1e-16, 1e-12, 4000};
  const double eps = 1e-3;
  const auto c = heat_content_curve(seg, InitialDatum::radial_power(2), {0.0, eps, 2 * eps}, q);
  const auto r = scan(c, Property::midpoint_convex);
  CHECK(r.violation_found());
  CHECK(scan(c, Property::decreasing).verdict == Verdict::pass);
}

TEST_CASE("midpoint insertion and property names") {
  const auto g = with_midpoints({1.0, 2.0, 4.0});
  CHECK(g == std::vector<double>{1.0, 1.5, 2.0, 3.0, 4.0});
  for (auto prop : {Property::decreasing, Property::strictly_decreasing, Property::midpoint_convex,
                    Property::strictly_midpoint_convex})
    CHECK(property_from_string(to_string(prop)) == prop);
  CHECK_THROWS(property_from_string("concave"));
}
