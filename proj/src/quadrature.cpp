#include "heatlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace heatlab {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  static const GaussLegendreRule r32 = build_rule(32);
  static const GaussLegendreRule r64 = build_rule(64);
  if (n == 32) return r32;
  if (n == 64) return r64;
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                       double rel_tol, int max_iter) {
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  for (; it < max_iter && (b - a) > rel_tol * (std::abs(c) + std::abs(d)) * 0.5; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? MinimizeResult{c, fc, it} : MinimizeResult{d, fd, it};
}

MinimizeResult bracket_and_minimize(const std::function<double(double)>& f, double a, double b, int grid,
                                    double rel_tol) {
  if (!(b > a) || !(a > 0)) throw std::invalid_argument("bracket_and_minimize: need 0 < a < b");
  const double ratio = std::pow(b / a, 1.0 / grid);
  int best = 0;
  double best_val = f(a);
  std::vector<double> xs(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    xs[i] = a * std::pow(ratio, i);
    double v = f(xs[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = xs[std::max(best - 1, 0)];
  const double hi = xs[std::min(best + 1, grid)];
  auto r = golden_section_minimize(f, lo, hi, rel_tol);
  if (best_val < r.value) return {xs[best], best_val, r.iterations};
  return r;
}

double richardson_derivative(const std::function<double(double)>& f, double t, int order, double h, int levels) {
  if (order != 1 && order != 2) throw std::invalid_argument("richardson_derivative: order must be 1 or 2");
  std::vector<double> d(levels + 1);
  const double f0 = order == 2 ? f(t) : 0.0;
  for (int k = 0; k <= levels; ++k) {
    const double hk = h / std::ldexp(1.0, k);
    const double fp = f(t + hk), fm = f(t - hk);
    d[k] = order == 1 ? (fp - fm) / (2 * hk) : (fp - 2 * f0 + fm) / (hk * hk);
  }
  // Neville-style elimination of even powers of h
  for (int j = 1; j <= levels; ++j) {
    const double factor = std::ldexp(1.0, 2 * j);
    for (int k = levels; k >= j; --k) d[k] = (factor * d[k] - d[k - 1]) / (factor - 1);
  }
  return d[levels];
}

}  // namespace heatlab
