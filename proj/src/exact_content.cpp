#include <cmath>
#include <numbers>

#include "content_methods.hpp"

namespace heatlab::detail {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double phi(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// W(z) with W'' = g_t and W(z) - W(-z) = z; split as z^+ + W(-|z|) so that the linear
// parts of a pair combination cancel exactly.
struct WParts {
  double plus;  // z^+
  Derivs tail;  // W(-|z|), d/dt W = g_t(z), d2/dt2 W = d/dt g_t(z)
};

WParts w_parts(double z, double t) {
  const double sigma = std::sqrt(2 * t);
  const double zeta = std::abs(z) / sigma;
  const double g = phi(zeta) / sigma;
  WParts w;
  w.plus = z > 0 ? z : 0.0;
  w.tail[0] = sigma * (phi(zeta) - zeta * 0.5 * std::erfc(zeta * kInvSqrt2));
  w.tail[1] = g;
  w.tail[2] = g * (z * z / (4 * t * t) - 1 / (2 * t));
  return w;
}

Derivs product(const Derivs& f, const Derivs& g) {
  return Derivs(f[0] * g[0], f[1] * g[0] + f[0] * g[1], f[2] * g[0] + 2 * f[1] * g[1] + f[0] * g[2]);
}

// Phi(zeta) and its t-derivatives for zeta = (edge - x) / sqrt(2t)
Derivs cdf_with_derivs(double edge, double x, double t, bool upper_tail) {
  const double zeta = (edge - x) / std::sqrt(2 * t);
  const double p = phi(zeta);
  // upper_tail: return 1 - Phi(zeta) (derivatives flip sign)
  const double s = upper_tail ? -1.0 : 1.0;
  const double v = upper_tail ? 0.5 * std::erfc(zeta * kInvSqrt2) : 0.5 * std::erfc(-zeta * kInvSqrt2);
  return Derivs(v, s * p * (-zeta / (2 * t)), s * p * zeta * (3 - zeta * zeta) / (4 * t * t));
}

}  // namespace

Derivs interval_pair(double a, double b, double c, double d, double t) {
  const double z[4] = {b - c, b - d, a - c, a - d};
  const double sign[4] = {1, -1, -1, 1};
  Derivs out = Derivs::Zero();
  bool all_pos = true, all_neg = true;
  double lin = 0;
  for (int i = 0; i < 4; ++i) {
    WParts w = w_parts(z[i], t);
    out += sign[i] * w.tail;
    lin += sign[i] * w.plus;
    all_pos = all_pos && z[i] >= 0;
    all_neg = all_neg && z[i] <= 0;
  }
  if (!all_pos && !all_neg) out[0] += lin;
  return out;
}

Derivs interval_mass(double x, double c, double d, double t) {
  const double sigma = std::sqrt(2 * t);
  const double alpha = (c - x) / sigma, beta = (d - x) / sigma;
  if (alpha >= 0) {
    // both edges right of x: upper tails
    return cdf_with_derivs(c, x, t, true) - cdf_with_derivs(d, x, t, true);
  }
  if (beta <= 0) {
    return cdf_with_derivs(d, x, t, false) - cdf_with_derivs(c, x, t, false);
  }
  Derivs v = -cdf_with_derivs(c, x, t, false) - cdf_with_derivs(d, x, t, true);
  v[0] += 1.0;
  return v;
}

Derivs box_content(const std::vector<Box>& xs, const std::vector<Box>& ys, double t) {
  Derivs total = Derivs::Zero();
  for (const auto& bx : xs)
    for (const auto& by : ys) {
      Derivs f(1, 0, 0);
      for (Eigen::Index k = 0; k < bx.lo.size(); ++k)
        f = product(f, interval_pair(bx.lo[k], bx.hi[k], by.lo[k], by.hi[k], t));
      total += f;
    }
  return total;
}

Derivs box_temperature(const std::vector<Box>& ys, const Point& x, double t) {
  Derivs total = Derivs::Zero();
  for (const auto& by : ys) {
    Derivs f(1, 0, 0);
    for (Eigen::Index k = 0; k < by.lo.size(); ++k) f = product(f, interval_mass(x[k], by.lo[k], by.hi[k], t));
    total += f;
  }
  return total;
}

Derivs circle_image_content(const std::vector<Arc>& xs, const std::vector<Arc>& ys, double circumference,
                            double t) {
  const double sigma = std::sqrt(2 * t);
  // arcs live in [0, 2L); beyond |n| = N the images are > 40 sigma apart
  const long n_max = 3 + static_cast<long>(std::ceil(40 * sigma / circumference));
  Derivs total = Derivs::Zero();
  for (const auto& ax : xs)
    for (const auto& ay : ys) {
      Derivs pair = interval_pair(ax.start, ax.start + ax.length, ay.start, ay.start + ay.length, t);
      for (long n = 1; n <= n_max; ++n) {
        const double s = n * circumference;
        pair += interval_pair(ax.start, ax.start + ax.length, ay.start + s, ay.start + ay.length + s, t);
        pair += interval_pair(ax.start, ax.start + ax.length, ay.start - s, ay.start + ay.length - s, t);
      }
      total += pair;
    }
  return total;
}

Derivs circle_image_temperature(const std::vector<Arc>& ys, double circumference, double x, double t) {
  const double sigma = std::sqrt(2 * t);
  const long n_max = 3 + static_cast<long>(std::ceil(40 * sigma / circumference));
  Derivs total = Derivs::Zero();
  for (const auto& ay : ys)
    for (long n = -n_max; n <= n_max; ++n) {
      const double s = n * circumference;
      total += interval_mass(x, ay.start + s, ay.start + ay.length + s, t);
    }
  return total;
}

}  // namespace heatlab::detail
