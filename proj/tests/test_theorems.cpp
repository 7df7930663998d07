#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatlab/io.hpp"
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

std::string failures(const VerificationReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (c.verdict != Verdict::pass) s += c.description + " [" + std::string(to_string(c.verdict)) + "]; ";
  return s;
}
}  // namespace

TEST_CASE("derivative-bound constant") {
  CHECK(theorem5_constant(1) == 1);
  CHECK(theorem5_constant(2) == 17);
  CHECK(theorem5_constant(3) == 41);
}

TEST_CASE("threshold minimization against a dense grid") {
  for (int m : {1, 2}) {
    const auto cm = cm_threshold(m);
    CHECK(cm.theta_min == doctest::Approx(std::exp(4.5 / m)).epsilon(1e-15));
    CHECK(cm.c_m * cm.c_m == doctest::Approx(cm.objective_min).epsilon(1e-15));
    CHECK(cm.objective_min >= 16 * std::log(8 * pi));
    CHECK(cm.c_m > 2);
    CHECK(cm_objective(m, cm.theta_min * (1 + 1e-12)) > cm.objective_min);
    CHECK(cm.curve.size() == 100);

    // 1e6-point geometric grid over (theta_min, 100 theta_min)
    const double a = std::log(cm.theta_min), b = std::log(100 * cm.theta_min);
    double best = 1e300, at = 0;
    const int n = 1'000'000;
    for (int i = 1; i <= n; ++i) {
      const double th = std::exp(a + (b - a) * i / n);
      const double v = cm_objective(m, th);
      if (v < best) best = v, at = th;
    }
    CHECK(cm.objective_min <= best);
    CHECK(cm.objective_min == doctest::Approx(best).epsilon(1e-6));
    CHECK(cm.theta_star == doctest::Approx(at).epsilon(1e-3));
  }
  const auto c2 = cm_threshold(2);
  CHECK(c2.theta_star == doctest::Approx(10.914011780375679).epsilon(1e-8));
  CHECK(c2.c_m == doctest::Approx(48.199964862209704).epsilon(1e-10));
}

TEST_CASE("theorem 1 on Euclidean balls and boxes") {
  const auto r3 = verify_thm1(Domain::ball(AmbientSpace::euclidean(3), p({0, 0, 0}), 1), log_grid(0.01, 10, 20));
  CHECK_MESSAGE(r3.overall == Verdict::pass, failures(r3));
  const auto box = verify_thm1(Domain::box(AmbientSpace::euclidean(2), p({0, 0}), p({1, 3})), log_grid(0.01, 10, 12));
  CHECK_MESSAGE(box.overall == Verdict::pass, failures(box));
  const auto ann = verify_thm1(Domain::annulus(AmbientSpace::euclidean(2), p({0, 0}), 1, 2), log_grid(0.05, 5, 8));
  CHECK_MESSAGE(ann.overall == Verdict::pass, failures(ann));
}

TEST_CASE("theorem 1 on the circle") {
  const auto S = AmbientSpace::circle(2 * pi);
  const auto arc = verify_thm1(Domain::arc(S, 0, pi), log_grid(0.05, 5, 12));
  CHECK_MESSAGE(arc.overall == Verdict::pass, failures(arc));
  const auto full = verify_thm1(Domain::arc(S, 0, 2 * pi), log_grid(0.05, 5, 12));
  CHECK_MESSAGE(full.overall == Verdict::pass, failures(full));
  bool strict_absent = false;
  for (const auto& c : full.checks)
    if (c.description.find("strict") != std::string::npos) strict_absent = true;
  CHECK(strict_absent);
}

TEST_CASE("theorem 1 with Monte Carlo is never a violation") {
  VerifyOptions o;
  o.params.method = Method::mc;
  o.params.samples = 200'000;
  const auto r = verify_thm1(two_ball_domain(0.3, 2), log_grid(0.05, 2, 6), o);
  CHECK(r.overall != Verdict::fail);
}

TEST_CASE("theorem 5") {
  const Domain omega = Domain::ball(AmbientSpace::euclidean(2), p({0, 0}), 0.5);
  const auto r = verify_thm5(omega, {1, 2, 4});
  CHECK_MESSAGE(r.overall == Verdict::pass, failures(r));
  const auto small = verify_thm5(omega, {0.1, 0.5});
  CHECK_MESSAGE(small.overall == Verdict::pass, failures(small));
}

TEST_CASE("theorem 3") {
  for (int m : {1, 2}) {
    const auto xs = thm3_default_x_grid(0.05, m);
    CHECK(xs.size() == 9);
    const Domain omega = two_ball_domain(0.05, m);
    for (const auto& x : xs) CHECK(contains(omega, x));
    const auto r = verify_thm3(0.05, m, xs, thm3_default_t_grid());
    CHECK_MESSAGE(r.overall == Verdict::pass, failures(r));
  }
  CHECK(thm3_default_t_grid().size() == 12);
  const double combined = 1.0 / 50 + 121.0 / 50 * std::exp(-171.0 / 121) + std::exp(-1.0) - std::exp(-1.21) -
                          std::exp(-0.25);
  CHECK(combined < -0.10019);
}

TEST_CASE("theorem 4") {
  const auto r = verify_thm4(2, 1, {5e-4, 1e-3, 2e-3});
  CHECK_MESSAGE(r.overall == Verdict::pass, failures(r));
  Thm4Options o;
  o.scan_grid = with_midpoints(log_grid(1e-2, 5, 8));
  const auto r2 = verify_thm4(2, 2, {1e-3}, o);
  CHECK(scan(heat_content_curve(Domain::ball(AmbientSpace::euclidean(2), p({0, 0}), 1), InitialDatum::radial_power(2),
                                o.scan_grid),
             Property::decreasing)
            .verdict == Verdict::pass);
  CHECK_MESSAGE(r2.overall == Verdict::pass, failures(r2));
  CHECK_THROWS_AS(verify_thm4(1.0, 1, {1e-3}), ConfigurationError);
}

TEST_CASE("theorem 2") {
  const auto cm = cm_threshold(2);
  const auto r = verify_thm2(2, cm.c_m, cm.theta_star, 2'000'000, 7);
  CHECK_MESSAGE(r.overall == Verdict::pass, failures(r));
  CHECK_THROWS(verify_thm2(2, 1.5, cm.theta_star, 2'000'000));
}

TEST_CASE("reports are reproducible") {
  const Domain omega = Domain::ball(AmbientSpace::euclidean(2), p({0, 0}), 0.5);
  const auto a = to_json(verify_thm5(omega, {1, 2})).dump();
  const auto b = to_json(verify_thm5(omega, {1, 2})).dump();
  CHECK(a == b);
  VerificationReport rep;
  rep.add({"x", {1}, "x > 0", 1, 0, Verdict::pass});
  rep.add({"y", {1}, "y > 0", 0, 1, Verdict::inconclusive});
  rep.finalize();
  CHECK(rep.overall == Verdict::inconclusive);
  rep.add({"z", {1}, "z > 0", -1, 0, Verdict::fail});
  rep.finalize();
  CHECK(rep.overall == Verdict::fail);
}
