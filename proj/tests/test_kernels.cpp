#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heatlab/kernels.hpp"
#include "heatlab/random.hpp"

using namespace heatlab;
using boost::math::quadrature::gauss_kronrod;
using std::numbers::pi;

namespace {
Point p(std::initializer_list<double> xs) {
  Point v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double gk(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}
}  // namespace

TEST_CASE("symmetry on random inputs") {
  RandomStream rs(1, 0);
  for (int i = 0; i < 200; ++i) {
    Point x(2), y(2);
    x << 4 * rs.uniform() - 2, 4 * rs.uniform() - 2;
    y << 4 * rs.uniform() - 2, 4 * rs.uniform() - 2;
    const double t = 0.1 + 1.9 * rs.uniform();
    CHECK(heat_kernel(x, y, t) == heat_kernel(y, x, t));
    CHECK(heat_kernel(KernelEval(2, x, y, t)) == doctest::Approx(heat_kernel(x, y, t)).epsilon(1e-15));
  }
}

TEST_CASE("normalization") {
  const double t = 0.37;
  const Point y1 = p({0.3});
  const double one_d = gk([&](double x) { return heat_kernel(p({x}), y1, t); }, -30, 30);
  CHECK(std::abs(one_d - 1) < 1e-12);

  const Point y2 = p({0.2, -0.4});
  const double two_d = gk(
      [&](double x1) { return gk([&](double x2) { return heat_kernel(p({x1, x2}), y2, t); }, -12, 12); }, -12, 12);
  CHECK(std::abs(two_d - 1) < 1e-12);

  // radial form in m = 5: |S^4| int r^4 p(r) dr
  const double s4 = 8 * pi * pi / 3;
  const double five_d = s4 * gk([&](double r) { return std::pow(r, 4) * heat_kernel_b(5, r * r / 4, t); }, 0, 20);
  CHECK(std::abs(five_d - 1) < 1e-12);
}

TEST_CASE("semigroup property") {
  RandomStream rs(2, 0);
  for (int i = 0; i < 5; ++i) {
    Point x(2), y(2);
    x << 4 * rs.uniform() - 2, 4 * rs.uniform() - 2;
    y << 4 * rs.uniform() - 2, 4 * rs.uniform() - 2;
    const double s = 0.1 + 1.9 * rs.uniform(), t = 0.1 + 1.9 * rs.uniform();
    const double lhs = gk(
        [&](double z1) {
          return gk([&](double z2) { return heat_kernel(x, p({z1, z2}), s) * heat_kernel(p({z1, z2}), y, t); },
                    -16, 16);
        },
        -16, 16);
    CHECK(std::abs(lhs - heat_kernel(x, y, s + t)) < 1e-10);
  }
}

TEST_CASE("time derivatives against finite differences") {
  const int m = 3;
  const double r = 0.7, t = 0.5, b = r * r / 4;
  auto p_of_t = [&](double s) { return heat_kernel_b(m, b, s); };
  const Point x = p({0.7, 0, 0}), y = p({0, 0, 0});
  const KernelEval e(m, x, y, t);
  const double h = 1e-4;
  const double d1 = (p_of_t(t + h) - p_of_t(t - h)) / (2 * h);
  const double d2 = (p_of_t(t + h) - 2 * p_of_t(t) + p_of_t(t - h)) / (h * h);
  CHECK(heat_kernel_time_derivative(e, 1) == doctest::Approx(d1).epsilon(1e-6));
  CHECK(heat_kernel_time_derivative(e, 2) == doctest::Approx(d2).epsilon(1e-6));
  CHECK_THROWS_AS(heat_kernel_time_derivative(e, 3), DomainError);
}

TEST_CASE("second time derivative vanishes at the predicted root") {
  // (q - s)^2 = q with q = (m + 2) / 2, s = b / t
  for (int m : {1, 2, 3, 7}) {
    const double q = 0.5 * (m + 2), t = 0.8;
    for (double s : {q - std::sqrt(q), q + std::sqrt(q)}) {
      const double b = s * t;
      CHECK(std::abs(time_derivative_factor(m, b, t, 2)) < 1e-12);
    }
    CHECK(time_derivative_factor(m, 0.0, t, 2) > 0);
  }
}

TEST_CASE("domain errors and extreme arguments") {
  CHECK_THROWS_AS(heat_kernel(p({0}), p({1}), 0.0), DomainError);
  CHECK_THROWS_AS(heat_kernel(p({0}), p({1}), -1.0), DomainError);
  CHECK_THROWS_AS(KernelEval(2, p({0}), p({1}), 1.0), DomainError);
  // far tail: no NaN, underflows to a finite non-negative value
  const double tiny = heat_kernel(p({0, 0}), p({100, 0}), 1e-3);
  CHECK(std::isfinite(tiny));
  CHECK(tiny >= 0);
  CHECK(log_heat_kernel_b(2, 2500.0, 1e-3) == doctest::Approx(-std::log(4 * pi * 1e-3) - 2.5e6));
}

TEST_CASE("Neumann half-space kernel") {
  // m = 1 example: x = y = 1, t = 1 gives (1 + e^{-1}) / sqrt(4 pi)
  const KernelEval e(1, p({1.0}), p({1.0}), 1.0);
  CHECK(neumann_halfspace_kernel(e) == doctest::Approx((1 + std::exp(-1.0)) / std::sqrt(4 * pi)).epsilon(1e-15));

  // normal derivative at the boundary vanishes
  const Point y = p({0.4, 0.3});
  const double h = 1e-8, t = 0.6;
  auto k_at = [&](double x1) { return neumann_halfspace_kernel(KernelEval(2, p({x1, -0.2}), y, t)); };
  const double slope = (k_at(1.5 * h) - k_at(0.5 * h)) / h;
  CHECK(std::abs(slope) < 1e-8);
  // away from the boundary the derivative is order one
  CHECK(std::abs((k_at(0.3 + h) - k_at(0.3 - h)) / (2 * h)) > 1e-3);

  CHECK_THROWS_AS(neumann_halfspace_kernel(KernelEval(1, p({-0.1}), p({1.0}), 1.0)), DomainError);
  CHECK_THROWS_AS(neumann_halfspace_kernel(KernelEval(1, p({0.1}), p({0.0}), 1.0)), DomainError);
}

TEST_CASE("circle kernel") {
  const double L = 2 * pi;
  // normalization over one period
  for (double t : {0.01, 0.3, 5.0}) {
    const double total = gk([&](double x) { return circle_kernel(x, 0.4, t, L); }, 0, L);
    CHECK(std::abs(total - 1) < 1e-12);
  }
  // large-time limit 1 / L
  CHECK(circle_kernel(0.0, 3.0, 50.0, L) == doctest::Approx(1 / L).epsilon(1e-15));
  // spectral form (1 / L) (1 + 2 sum_k exp(-t (2 pi k / L)^2) cos(2 pi k (x - y) / L))
  const double t = 0.2;
  for (double d : {0.0, 0.5, 2.0, 3.1, 5.9}) {
    double spec = 1;
    for (int k = 1; k < 200; ++k) {
      const double w = 2 * pi * k / L;
      spec += 2 * std::exp(-t * w * w) * std::cos(w * d);
    }
    spec /= L;
    CHECK(std::abs(circle_kernel(d, 0.0, t, L) - spec) < 1e-12);
  }
  // periodic and symmetric
  CHECK(circle_kernel(0.3 + L, 1.0, t, L) == doctest::Approx(circle_kernel(0.3, 1.0, t, L)).epsilon(1e-14));
  CHECK(circle_kernel(0.3, 1.0, t, L) == doctest::Approx(circle_kernel(1.0, 0.3, t, L)).epsilon(1e-14));
  CHECK_THROWS_AS(circle_kernel(0.0, 0.0, 0.0, L), DomainError);
}

TEST_CASE("long double instantiation") {
  const long double v = heat_kernel_b<long double>(2, 0.25L, 1.0L);
  CHECK(static_cast<double>(v) == doctest::Approx(std::exp(-0.25) / (4 * pi)).epsilon(1e-15));
}
