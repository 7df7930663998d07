#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace heatlab {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureOptions {
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  std::size_t max_panels = 4000;
};

template <typename Value>
struct QuadratureResultT {
  Value value;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};
using QuadratureResult = QuadratureResultT<double>;

namespace detail {

template <typename V>
double magnitude(const V& v) {
  if constexpr (std::is_arithmetic_v<V>) return std::abs(v);
  else return v.abs().maxCoeff();
}

template <typename V>
V zero_like() {
  if constexpr (std::is_arithmetic_v<V>) return V(0);
  else return V::Zero();
}

template <typename Value>
struct Panel {
  double a, b;
  Value value;
  double error;
};

template <typename F>
auto panel_rule(F& f, double a, double b) {
  using Value = std::decay_t<std::invoke_result_t<F&, double>>;
  const auto& g32 = gauss_legendre(32);
  const auto& g64 = gauss_legendre(64);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  Value s32 = zero_like<Value>(), s64 = zero_like<Value>();
  for (std::size_t i = 0; i < g32.nodes.size(); ++i) s32 += g32.weights[i] * f(c + h * g32.nodes[i]);
  for (std::size_t i = 0; i < g64.nodes.size(); ++i) s64 += g64.weights[i] * f(c + h * g64.nodes[i]);
  s32 *= h;
  s64 *= h;
  Value diff = s64 - s32;
  return Panel<Value>{a, b, s64, magnitude(diff)};
}

}  // namespace detail

// Globally adaptive Gauss-Legendre integration with 64-node panels. The error of each panel
// is estimated by the 32-node rule on the same panel (pessimistic: it is the error of the
// lower rule). The worst panel is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |I|). Breakpoints inside (a, b) seed the initial panels.
// Works for scalar integrands and for fixed-size Eigen arrays.
template <typename F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {},
               std::span<const double> breakpoints = {}) {
  using Value = std::decay_t<std::invoke_result_t<F&, double>>;
  using detail::magnitude;
  QuadratureResultT<Value> out{detail::zero_like<Value>(), 0.0, 0, true};
  if (!(b > a)) return out;

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<detail::Panel<Value>> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0) continue;
    panels.push_back(detail::panel_rule(f, cuts[i], cuts[i + 1]));
    out.evaluations += 96;
  }
  auto by_error = [](const auto& p, const auto& q) { return p.error < q.error; };
  std::make_heap(panels.begin(), panels.end(), by_error);

  auto totals = [&] {
    Value v = detail::zero_like<Value>();
    double e = 0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };
  auto [total, err] = totals();
  while (err > std::max(opt.abs_tol, opt.rel_tol * magnitude(total))) {
    if (panels.size() >= opt.max_panels) {
      out.converged = false;
      break;
    }
    std::pop_heap(panels.begin(), panels.end(), by_error);
    auto worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      panels.push_back(worst);
      std::push_heap(panels.begin(), panels.end(), by_error);
      break;
    }
    panels.push_back(detail::panel_rule(f, worst.a, mid));
    std::push_heap(panels.begin(), panels.end(), by_error);
    panels.push_back(detail::panel_rule(f, mid, worst.b));
    std::push_heap(panels.begin(), panels.end(), by_error);
    out.evaluations += 192;
    std::tie(total, err) = totals();
  }
  out.value = total;
  out.error = err;
  return out;
}

struct MinimizeResult {
  double x;
  double value;
  int iterations;
};

// Golden-section search for a minimum of a unimodal f on [a, b].
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                       double rel_tol = 1e-10, int max_iter = 500);

// Scans f on a geometric grid in (a, b) and refines the best cell by golden section.
MinimizeResult bracket_and_minimize(const std::function<double(double)>& f, double a, double b,
                                    int grid = 200, double rel_tol = 1e-10);

// Richardson-extrapolated central differences of f at t. Central differences with steps
// h, h/2, ..., h/2^levels are combined to eliminate the h^2, h^4, ... error terms.
double richardson_derivative(const std::function<double(double)>& f, double t, int order, double h,
                             int levels = 2);

}  // namespace heatlab
