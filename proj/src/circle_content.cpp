#include <algorithm>
#include <cmath>
#include <numbers>

#include "content_methods.hpp"
#include "heatlab/kernels.hpp"

namespace heatlab {

namespace {

std::vector<Arc> require_arcs(const Domain& d) {
  auto arcs = as_arcs(d);
  if (!arcs) throw ConfigurationError("circle heat content: domain must be a union of arcs on a circle");
  return *arcs;
}

// e^{-mu_K t} < 1e-16  <=>  k > (L / 2 pi) sqrt(16 ln 10 / t)
std::size_t modes_needed(double circumference, double t) {
  const double k = circumference / (2 * std::numbers::pi) * std::sqrt(16 * std::log(10.0) / t);
  return static_cast<std::size_t>(std::ceil(k)) + 1;
}

}  // namespace

CircleSpectrum circle_spectrum(const Domain& d, std::size_t k_max) {
  const auto arcs = require_arcs(d);
  const double l = d.space().circumference();
  CircleSpectrum s;
  s.circumference = l;
  s.modes.reserve(2 * k_max + 1);
  double total = 0;
  for (const auto& a : arcs) total += a.length;
  s.modes.push_back({0.0, total / std::sqrt(l)});
  const double norm = std::sqrt(2 / l);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = 2 * std::numbers::pi * static_cast<double>(k) / l;
    double c = 0, sn = 0;
    for (const auto& a : arcs) {
      // int_s^{s+len} cos(w x) dx = 2 cos(w (s + len/2)) sin(w len / 2) / w, likewise for sin
      const double half = std::sin(0.5 * w * a.length);
      const double mid = w * (a.start + 0.5 * a.length);
      c += 2 * std::cos(mid) * half / w;
      sn += 2 * std::sin(mid) * half / w;
    }
    s.modes.push_back({w * w, norm * c});
    s.modes.push_back({w * w, norm * sn});
  }
  return s;
}

double eigensum(const CircleSpectrum& s, double t, int order) {
  if (order < 0 || order > 2) throw DomainError("eigensum: order must be 0, 1 or 2");
  double sum = 0;
  // smallest terms first
  for (auto it = s.modes.rbegin(); it != s.modes.rend(); ++it) {
    const double e = std::exp(-t * it->mu) * it->coeff * it->coeff;
    sum += e * std::pow(-it->mu, order);
  }
  return sum;
}

Estimate heat_content_circle_quadrature(const Domain& d, double t, const QuadratureOptions& quad) {
  if (!(t > 0)) throw DomainError("circle heat content quadrature: t must be > 0");
  const auto arcs = require_arcs(d);
  const double l = d.space().circumference();
  Estimate e;
  e.method = Method::kernel_quad;
  for (const auto& x : arcs)
    for (const auto& y : arcs) {
      const double a = x.start, b = x.start + x.length, c = y.start, dd = y.start + y.length;
      auto overlap = [&](double z) {
        const double len = std::min(b, dd + z) - std::max(a, c + z);
        return len > 0 ? len * circle_kernel(z, 0.0, t, l) : 0.0;
      };
      const double cuts[2] = {a - c, b - dd};
      auto r = integrate(overlap, a - dd, b - c, quad, cuts);
      e.value += r.value;
      e.abs_error += r.error;
      e.n += r.evaluations;
    }
  return e;
}

Estimate heat_content_circle(const Domain& d, double t, std::size_t k, const ContentParams& params) {
  const auto arcs = require_arcs(d);
  if (t < 0) throw DomainError("circle heat content: t must be >= 0");
  Estimate e;
  e.method = Method::eigensum;
  if (t == 0) {
    e.value = measure(d);
    return e;
  }
  const double l = d.space().circumference();
  const std::size_t cap = k == 0 ? params.circle_max_modes : k;
  const std::size_t needed = modes_needed(l, t);
  if (needed > cap) {
    e = heat_content_circle_quadrature(d, t, params.quad);
    e.low_confidence = true;
    return e;
  }
  const auto spectrum = circle_spectrum(d, needed);
  e.value = eigensum(spectrum, t);
  e.n = spectrum.modes.size();
  e.abs_error = 1e-16 * measure(d) + 4 * std::numeric_limits<double>::epsilon() * std::abs(e.value);
  return e;
}

}  // namespace heatlab
