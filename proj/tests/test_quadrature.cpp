#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "heatlab/quadrature.hpp"

using namespace heatlab;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {32, 64}) {
    const auto& g = gauss_legendre(n);
    REQUIRE(static_cast<int>(g.nodes.size()) == n);
    double w = 0, x2 = 0, odd = 0;
    for (int i = 0; i < n; ++i) {
      w += g.weights[i];
      x2 += g.weights[i] * g.nodes[i] * g.nodes[i];
      odd += g.weights[i] * std::pow(g.nodes[i], 2 * n - 1);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x2 == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(std::abs(odd) < 1e-15);
  }
}

TEST_CASE("adaptive integration") {
  const auto r = integrate([](double x) { return std::exp(-x * x); }, -10, 10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

  // kink at 1/3 resolved with and without a breakpoint
  auto kink = [](double x) { return std::abs(x - 1.0 / 3); };
  const double exact = (1.0 / 9 + 4.0 / 9) / 2;
  const std::array<double, 1> bp{1.0 / 3};
  CHECK(integrate(kink, 0, 1, {}, bp).value == doctest::Approx(exact).epsilon(1e-15));
  CHECK(integrate(kink, 0, 1, {1e-15, 1e-12, 4000}).value == doctest::Approx(exact).epsilon(1e-11));

  // vector-valued integrand
  auto vec = [](double x) {
    Eigen::Array2d v;
    v << std::sin(x), std::cos(x);
    return v;
  };
  const auto rv = integrate(vec, 0, std::numbers::pi / 2);
  CHECK(rv.value[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rv.value[1] == doctest::Approx(1.0).epsilon(1e-15));

  // empty interval
  CHECK(integrate([](double) { return 1.0; }, 1, 1).value == 0);

  // budget exhaustion is reported
  const auto bad = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, {0, 1e-15, 8});
  CHECK_FALSE(bad.converged);
}

TEST_CASE("minimizers") {
  auto f = [](double x) { return (x - 2.5) * (x - 2.5) + 1; };
  const auto g = golden_section_minimize(f, 0, 10, 1e-12);
  CHECK(g.x == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(g.value == doctest::Approx(1.0).epsilon(1e-12));

  // two local minima: the bracketing scan finds the global one
  auto h = [](double x) { return std::cos(3 * std::log(x)) + 0.05 * std::log(x); };
  const auto b = bracket_and_minimize(h, 1.0, 1e4, 400, 1e-12);
  double best = 1e300;
  for (int i = 0; i <= 200000; ++i) best = std::min(best, h(std::exp(std::log(1e4) * i / 200000.0)));
  CHECK(b.value <= best + 1e-12);
}

TEST_CASE("Richardson differentiation converges at high order") {
  const double t = 0.7;
  auto f = [](double x) { return std::exp(-2 * x) * std::sin(x); };
  const double d1 = std::exp(-2 * t) * (std::cos(t) - 2 * std::sin(t));
  const double d2 = std::exp(-2 * t) * (3 * std::sin(t) - 4 * std::cos(t));
  for (int order : {1, 2}) {
    const double exact = order == 1 ? d1 : d2;
    const double e1 = std::abs(richardson_derivative(f, t, order, 0.2, 1) - exact);
    const double e2 = std::abs(richardson_derivative(f, t, order, 0.1, 1) - exact);
    CHECK(std::log2(e1 / e2) >= 3.5);
    CHECK(std::abs(richardson_derivative(f, t, order, 0.05, 2) - exact) < 1e-9);
  }
}
