#include <algorithm>
#include <cmath>
#include <numbers>

#include "content_methods.hpp"

namespace heatlab::detail {

namespace {

// Moments  S_{m-2} int_0^pi exp(-a c) c^k sin^{m-2}(theta) dtheta,  c = 1 - cos(theta), k = 0, 1, 2:
// the sphere average of exp(-b/t) once the radial part exp(-(rho - r)^2 / 4t) is factored out.
// For m = 1 the "sphere" is the two points theta = 0, pi.
Derivs angular_moments(int m, double a, const QuadratureOptions& opt) {
  if (m == 1) {
    const double e = std::exp(-2 * a);
    return Derivs(1 + e, 2 * e, 4 * e);
  }
  auto f = [m, a](double theta) {
    const double s = std::sin(0.5 * theta);
    const double c = 2 * s * s;
    double w = std::exp(-a * c);
    if (m > 2) w *= std::pow(std::sin(theta), m - 2);
    return Derivs(w, w * c, w * c * c);
  };
  // exp(-a c) < e^{-46} beyond c = 46 / a
  double upper = std::numbers::pi;
  if (a > 23) upper = 2 * std::asin(std::sqrt(23 / a));
  auto r = integrate(f, 0.0, upper, opt);
  return unit_sphere_area(m - 1) * r.value;
}

// sigma-scaled breakpoints around the given centres, clipped later by integrate()
std::vector<double> breakpoints_around(std::initializer_list<double> centres, double sigma) {
  std::vector<double> out;
  for (double c : centres) {
    out.push_back(c);
    for (double k : {1.0, 4.0}) {
      out.push_back(c - k * sigma);
      out.push_back(c + k * sigma);
    }
  }
  return out;
}

struct Tolerances {
  QuadratureOptions outer, middle, inner;
};

Tolerances split_tolerances(const QuadratureOptions& opt) {
  Tolerances t;
  t.outer = opt;
  t.middle = opt;
  t.middle.rel_tol = std::max(opt.rel_tol * 0.1, 1e-13);
  t.middle.abs_tol = opt.abs_tol * 1e-2;
  t.inner = opt;
  t.inner.rel_tol = std::max(opt.rel_tol * 0.01, 5e-14);
  t.inner.abs_tol = 0;
  return t;
}

// u and t-scaled derivatives (u, t u', t^2 u'') at radius rho, without the (4 pi t)^{-m/2} prefactor
RadialResult middle_integral(const RadialDatum& psi, int m, double rho, double t, const Tolerances& tol,
                             int max_order) {
  RadialResult out;
  const double sigma = std::sqrt(2 * t);
  const double reach = std::sqrt(160 * t);
  const double q = 0.5 * (m + 2);
  auto integrand = [&](double r) -> Derivs {
    const double pv = psi.psi(r);
    if (pv == 0) return Derivs::Zero();
    const double a = rho * r / (2 * t);
    const double b0t = (rho - r) * (rho - r) / (4 * t);
    const double w = std::pow(r, m - 1) * pv * std::exp(-b0t);
    if (w == 0) return Derivs::Zero();
    const Derivs j = angular_moments(m, a, tol.inner);
    Derivs g;
    g[0] = j[0];
    g[1] = max_order >= 1 ? (b0t - 0.5 * m) * j[0] + a * j[1] : 0.0;
    const double d = q - b0t;
    g[2] = max_order >= 2 ? (d * d - q) * j[0] - 2 * d * a * j[1] + a * a * j[2] : 0.0;
    return w * g;
  };
  const double cuts[1] = {rho};
  for (const auto& shell : psi.support) {
    const double dist = rho < shell.lo ? shell.lo - rho : (rho > shell.hi ? rho - shell.hi : 0.0);
    const double lo = std::max(shell.lo, rho - dist - reach);
    const double hi = std::min(shell.hi, rho + dist + reach);
    if (!(hi > lo)) continue;
    auto r = integrate(integrand, lo, hi, tol.middle, cuts);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

Derivs unscale(const Derivs& v, double t) { return Derivs(v[0], v[1] / t, v[2] / (t * t)); }

}  // namespace

RadialResult radial_temperature(const RadialDatum& psi, int m, double rho, double t, const QuadratureOptions& opt,
                                int max_order) {
  const auto tol = split_tolerances(opt);
  RadialResult r = middle_integral(psi, m, rho, t, tol, max_order);
  const double pre = std::pow(4 * std::numbers::pi * t, -0.5 * m);
  r.value = unscale(pre * r.value, t);
  r.error *= pre;
  r.error += tol.inner.rel_tol * std::abs(r.value[0]);
  return r;
}

RadialResult radial_content(const RadialProfile& omega, const RadialDatum& psi, int m, double t,
                            const QuadratureOptions& opt, RadialRegion region, int max_order) {
  const auto tol = split_tolerances(opt);
  const double sigma = std::sqrt(2 * t);
  RadialResult out;

  std::vector<RadialShell> outer_shells;
  if (region == RadialRegion::inside) {
    outer_shells = omega.shells;
  } else {
    double prev = 0;
    for (const auto& s : omega.shells) {
      if (s.lo > prev) outer_shells.push_back({prev, s.lo});
      prev = s.hi;
    }
    outer_shells.push_back({prev, prev + std::sqrt(160 * t)});
  }

  std::vector<double> cuts;
  for (const auto& s : omega.shells)
    for (double e : {s.lo, s.hi})
      for (double c : breakpoints_around({e}, sigma)) cuts.push_back(c);
  for (const auto& s : psi.support)
    for (double e : {s.lo, s.hi})
      for (double c : breakpoints_around({e}, sigma)) cuts.push_back(c);

  std::size_t evals = 0;
  bool converged = true;
  auto outer = [&](double rho) -> Derivs {
    auto r = middle_integral(psi, m, rho, t, tol, max_order);
    evals += r.evaluations;
    converged = converged && r.converged;
    return std::pow(rho, m - 1) * r.value;
  };
  for (const auto& s : outer_shells) {
    if (!(s.hi > s.lo)) continue;
    auto r = integrate(outer, s.lo, s.hi, tol.outer, cuts);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
  }
  const double pre = unit_sphere_area(m) * std::pow(4 * std::numbers::pi * t, -0.5 * m);
  out.value = unscale(pre * out.value, t);
  out.error = pre * out.error + tol.middle.rel_tol * std::abs(out.value[0]);
  out.evaluations = evals;
  out.converged = out.converged && converged;
  return out;
}

}  // namespace heatlab::detail
