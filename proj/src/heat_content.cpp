#include "heatlab/heat_content.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "content_methods.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab {

namespace {

bool same_leaf(const Domain& a, const Domain& b) {
  if (!(a.space() == b.space())) return false;
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (!std::is_same_v<X, Y>) {
          return false;
        } else if constexpr (std::is_same_v<X, Ball>) {
          return x.r == y.r && x.center == y.center;
        } else if constexpr (std::is_same_v<X, Annulus>) {
          return x.r1 == y.r1 && x.r2 == y.r2 && x.center == y.center;
        } else if constexpr (std::is_same_v<X, Box>) {
          return x.lo == y.lo && x.hi == y.hi;
        } else if constexpr (std::is_same_v<X, Arc>) {
          return x.start == y.start && x.length == y.length;
        } else {
          return false;
        }
      },
      a.shape(), b.shape());
}

void require_time_grid(const std::vector<double>& ts) {
  if (ts.empty()) throw ConfigurationError("time grid is empty");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!std::isfinite(ts[i]) || ts[i] < 0) throw DomainError("time grid: t must be finite and >= 0");
    if (i > 0 && !(ts[i] > ts[i - 1])) throw ConfigurationError("time grid must be strictly increasing");
  }
}

std::string describe(const Domain& omega, const InitialDatum& psi) {
  std::string s = omega.space().is_circle() ? "circle" : "R^" + std::to_string(omega.dim());
  s += ", " + std::to_string(omega.leaves().size()) + " part(s), measure " + std::to_string(measure(omega));
  s += std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, InitialDatum::ConstantOne>) return ", psi = 1";
        else if constexpr (std::is_same_v<K, InitialDatum::IndicatorOf>) return ", psi = indicator";
        else return ", psi = radial power " + std::to_string(k.alpha);
      },
      psi.kind());
  return s;
}

Estimate stochastic_point(const detail::McOutput& out, std::size_t j, Method method) {
  Estimate e;
  e.value = out.mean[static_cast<Eigen::Index>(j)];
  e.std_error = std::sqrt(std::max(0.0, out.cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
  e.n = out.n;
  e.method = method;
  return e;
}

// Places an MC output over the positive times back onto the full grid (t = 0 handled symbolically).
Curve assemble(const std::vector<double>& ts, const detail::McOutput& out, Method method, double at_zero,
               bool negate_plus_offset, double offset) {
  Curve c;
  c.t = ts;
  const auto n = static_cast<Eigen::Index>(ts.size());
  c.covariance = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::Index> map;
  for (Eigen::Index i = 0; i < n; ++i)
    if (ts[static_cast<std::size_t>(i)] > 0) map.push_back(i);
  std::size_t j = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ts[static_cast<std::size_t>(i)] == 0) {
      Estimate e;
      e.value = at_zero;
      e.method = method;
      c.points.push_back(e);
      continue;
    }
    Estimate e = stochastic_point(out, j++, method);
    if (negate_plus_offset) e.value = offset - e.value;
    c.points.push_back(e);
  }
  for (std::size_t a = 0; a < map.size(); ++a)
    for (std::size_t b = 0; b < map.size(); ++b)
      c.covariance(map[a], map[b]) = out.cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return c;
}

std::vector<double> positive_times(const std::vector<double>& ts) {
  std::vector<double> out;
  for (double t : ts)
    if (t > 0) out.push_back(t);
  return out;
}

}  // namespace

InitialDatum InitialDatum::radial_power(double alpha) {
  if (!(alpha > 1) || !std::isfinite(alpha)) throw ConfigurationError("radial power datum: alpha must be > 1");
  return InitialDatum(RadialPower{alpha});
}

void validate_datum(const Domain& omega, const InitialDatum& psi) {
  if (auto* ind = std::get_if<InitialDatum::IndicatorOf>(&psi.kind())) {
    if (!(ind->sub.space() == omega.space()))
      throw ConfigurationError("indicator datum: sub-domain lives in a different space");
    const auto parts = omega.leaves();
    for (const auto& leaf : ind->sub.leaves()) {
      bool found = std::any_of(parts.begin(), parts.end(), [&](const Domain& p) { return same_leaf(p, leaf); });
      if (!found) throw ConfigurationError("indicator datum: sub-domain must be made of components of the domain");
    }
  } else if (std::holds_alternative<InitialDatum::RadialPower>(psi.kind())) {
    if (omega.is_union() || !std::holds_alternative<Ball>(omega.shape()))
      throw ConfigurationError("radial power datum: domain must be a single ball");
  }
}

double evaluate_datum(const Domain& omega, const InitialDatum& psi, const Point& y) {
  if (!contains(omega, y)) return 0.0;
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, InitialDatum::ConstantOne>) {
          return 1.0;
        } else if constexpr (std::is_same_v<K, InitialDatum::IndicatorOf>) {
          return contains(k.sub, y) ? 1.0 : 0.0;
        } else {
          const auto& b = std::get<Ball>(omega.shape());
          return std::pow(std::abs(1 - (y - b.center).norm() / b.r), k.alpha);
        }
      },
      psi.kind());
}

double datum_sup(const InitialDatum&) { return 1.0; }

double datum_integral(const Domain& omega, const InitialDatum& psi) {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, InitialDatum::ConstantOne>) {
          return measure(omega);
        } else if constexpr (std::is_same_v<K, InitialDatum::IndicatorOf>) {
          return measure(k.sub);
        } else {
          // m omega_m R^m B(m, alpha + 1)
          const auto& b = std::get<Ball>(omega.shape());
          const int m = omega.dim();
          const double beta = std::exp(std::lgamma(m) + std::lgamma(k.alpha + 1) - std::lgamma(m + k.alpha + 1));
          return unit_sphere_area(m) * std::pow(b.r, m) * beta;
        }
      },
      psi.kind());
}

Domain datum_support(const Domain& omega, const InitialDatum& psi) {
  if (auto* ind = std::get_if<InitialDatum::IndicatorOf>(&psi.kind())) return ind->sub;
  return omega;
}

Method resolve_method(const Domain& omega, const InitialDatum& psi, Method requested) {
  if (requested != Method::automatic) return requested;
  const bool radial_power = std::holds_alternative<InitialDatum::RadialPower>(psi.kind());
  if (omega.space().is_circle()) return psi.is_one() ? Method::eigensum : Method::exact1d;
  if (!radial_power && as_boxes(omega) && as_boxes(datum_support(omega, psi)))
    return omega.dim() == 1 ? Method::exact1d : Method::box_exact;
  if (auto prof = radial_profile(omega)) {
    auto sub = radial_profile(datum_support(omega, psi));
    if (sub && sub->center == prof->center) return Method::radial_quad;
  }
  return Method::mc;
}

namespace detail {

std::vector<Box> datum_boxes(const Domain& omega, const InitialDatum& psi) {
  if (std::holds_alternative<InitialDatum::RadialPower>(psi.kind()))
    throw ConfigurationError("exact methods need psi = 1 or an indicator datum");
  auto boxes = as_boxes(datum_support(omega, psi));
  if (!boxes) throw ConfigurationError("exact methods need intervals (m = 1) or boxes");
  return *boxes;
}

RadialDatum radial_datum(const RadialProfile& omega, const InitialDatum& psi) {
  RadialDatum d;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, InitialDatum::ConstantOne>) {
          d.support = omega.shells;
          d.psi = [](double) { return 1.0; };
        } else if constexpr (std::is_same_v<K, InitialDatum::IndicatorOf>) {
          auto sub = radial_profile(k.sub);
          if (!sub || sub->center != omega.center)
            throw ConfigurationError("radial_quad: indicator must select concentric components");
          d.support = sub->shells;
          d.psi = [](double) { return 1.0; };
        } else {
          const double r = omega.shells.front().hi;
          const double alpha = k.alpha;
          d.support = omega.shells;
          d.psi = [r, alpha](double rho) { return std::pow(std::abs(1 - rho / r), alpha); };
        }
      },
      psi.kind());
  return d;
}

DeterministicDerivs deterministic_content(const Domain& omega, const InitialDatum& psi, double t, Method method,
                                          const ContentParams& params, int max_order) {
  DeterministicDerivs out;
  switch (method) {
    case Method::exact1d: {
      if (omega.space().is_circle()) {
        out.value = circle_image_content(*as_arcs(omega), *as_arcs(datum_support(omega, psi)),
                                         omega.space().circumference(), t);
      } else {
        if (omega.dim() != 1) throw ConfigurationError("exact1d requires m = 1 (use box_exact for boxes)");
        auto xs = as_boxes(omega);
        if (!xs) throw ConfigurationError("exact1d: unsupported shape");
        out.value = box_content(*xs, datum_boxes(omega, psi), t);
      }
      out.error = 64 * std::numeric_limits<double>::epsilon() * (std::abs(out.value[0]) + measure(omega));
      out.n = 1;
      return out;
    }
    case Method::box_exact: {
      auto xs = as_boxes(omega);
      if (!xs) throw ConfigurationError("box_exact requires a box or a union of boxes");
      out.value = box_content(*xs, datum_boxes(omega, psi), t);
      out.error = 64 * std::numeric_limits<double>::epsilon() * (std::abs(out.value[0]) + measure(omega));
      out.n = 1;
      return out;
    }
    case Method::radial_quad: {
      auto prof = radial_profile(omega);
      if (!prof) throw ConfigurationError("radial_quad requires concentric balls and annuli");
      auto r = radial_content(*prof, radial_datum(*prof, psi), omega.dim(), t, params.quad, RadialRegion::inside,
                              max_order);
      out.value = r.value;
      out.error = r.error;
      out.n = r.evaluations;
      out.converged = r.converged;
      return out;
    }
    case Method::eigensum: {
      if (!omega.space().is_circle() || !psi.is_one())
        throw ConfigurationError("eigensum requires arcs on a circle with psi = 1");
      const double l = omega.space().circumference();
      const double k = l / (2 * std::numbers::pi) * std::sqrt(16 * std::log(10.0) * 1.5 / t);
      const auto needed = static_cast<std::size_t>(std::ceil(k)) + 1;
      if (needed > params.circle_max_modes) {
        out.value = circle_image_content(*as_arcs(omega), *as_arcs(omega), l, t);
        out.converged = false;
      } else {
        const auto s = circle_spectrum(omega, needed);
        for (int o = 0; o <= 2; ++o) out.value[o] = eigensum(s, t, o);
        out.n = s.modes.size();
      }
      out.error = 1e-16 * measure(omega) + 16 * std::numeric_limits<double>::epsilon() * std::abs(out.value[0]);
      return out;
    }
    default:
      throw ConfigurationError("method " + std::string(to_string(method)) + " is not deterministic");
  }
}

}  // namespace detail

Estimate temperature(const Domain& omega, const InitialDatum& psi, const Point& x, double t,
                     const ContentParams& params) {
  validate_datum(omega, psi);
  if (x.size() != omega.dim()) throw DomainError("temperature: point dimension does not match domain");
  if (t < 0 || !std::isfinite(t)) throw DomainError("temperature: t must be >= 0");
  Method method = resolve_method(omega, psi, params.method);
  if (method == Method::eigensum) method = Method::exact1d;
  if (t == 0) {
    Estimate e;
    e.value = evaluate_datum(omega, psi, x);
    e.method = method;
    return e;
  }
  return temperature_dt(omega, psi, x, t, 0, params);
}

Estimate temperature_dt(const Domain& omega, const InitialDatum& psi, const Point& x, double t, int order,
                        const ContentParams& params) {
  validate_datum(omega, psi);
  if (order < 0 || order > 2) throw DomainError("temperature_dt: order must be 0, 1 or 2");
  if (!(t > 0)) throw DomainError("temperature_dt: t must be > 0");
  Method method = resolve_method(omega, psi, params.method);
  if (method == Method::eigensum) method = Method::exact1d;
  Estimate e;
  e.method = method;
  switch (method) {
    case Method::exact1d:
    case Method::box_exact: {
      detail::Derivs v;
      if (omega.space().is_circle()) {
        v = detail::circle_image_temperature(*as_arcs(datum_support(omega, psi)), omega.space().circumference(),
                                             x[0], t);
      } else {
        if (method == Method::exact1d && omega.dim() != 1) throw ConfigurationError("exact1d requires m = 1");
        v = detail::box_temperature(detail::datum_boxes(omega, psi), x, t);
      }
      e.value = v[order];
      e.abs_error = 64 * std::numeric_limits<double>::epsilon() * (1 + std::abs(v[order]));
      e.n = 1;
      return e;
    }
    case Method::radial_quad: {
      auto prof = radial_profile(omega);
      if (!prof) throw ConfigurationError("radial_quad requires concentric balls and annuli");
      auto r = detail::radial_temperature(detail::radial_datum(*prof, psi), omega.dim(), (x - prof->center).norm(), t,
                                          params.quad, order);
      e.value = r.value[order];
      e.abs_error = r.error * std::pow(t, -order);
      e.n = r.evaluations;
      return e;
    }
    case Method::mc:
    case Method::mc_semigroup:
    case Method::mc_exterior: {
      ContentParams p = params;
      if (order > 0) p.uniform_temperature_mc = true;
      auto out = detail::mc_temperature(omega, psi, x, {t}, p, order);
      return stochastic_point(out, 0, Method::mc);
    }
    default:
      throw ConfigurationError("temperature: unsupported method " + std::string(to_string(method)));
  }
}

Curve heat_content_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                         const ContentParams& params) {
  validate_datum(omega, psi);
  require_time_grid(ts);
  if (!std::isfinite(measure(omega))) throw ConfigurationError("heat content: domain must have finite measure");
  const Method method = resolve_method(omega, psi, params.method);
  const double h0 = datum_integral(omega, psi);
  const auto pos = positive_times(ts);

  Curve c;
  if (method == Method::mc || method == Method::mc_semigroup || method == Method::mc_exterior) {
    detail::McOutput out;
    if (!pos.empty()) {
      if (method == Method::mc) out = detail::mc_content(omega, psi, pos, params, 0);
      else if (method == Method::mc_semigroup) out = detail::mc_semigroup(omega, psi, pos, params);
      else out = detail::mc_exterior(omega, psi, pos, params);
    }
    c = assemble(ts, out, method, h0, method == Method::mc_exterior, h0);
  } else {
    c.t = ts;
    c.points.resize(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      Estimate e;
      e.method = method;
      if (ts[i] == 0) {
        e.value = h0;
      } else if (method == Method::eigensum) {
        e = heat_content_circle(omega, ts[i], 0, params);
      } else if (method == Method::kernel_quad) {
        if (!psi.is_one()) throw ConfigurationError("kernel_quad requires psi = 1");
        e = heat_content_circle_quadrature(omega, ts[i], params.quad);
      } else {
        auto d = detail::deterministic_content(omega, psi, ts[i], method, params, 0);
        e.value = d.value[0];
        e.abs_error = d.error;
        e.n = d.n;
        e.low_confidence = !d.converged;
      }
      c.points[i] = e;
    });
  }
  c.descriptor = describe(omega, psi);
  return c;
}

Estimate heat_content(const Domain& omega, const InitialDatum& psi, double t, const ContentParams& params) {
  if (t < 0 || !std::isfinite(t)) throw DomainError("heat content: t must be >= 0");
  return heat_content_curve(omega, psi, {t}, params).points.front();
}

Curve heat_loss_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                      const ContentParams& params, LossRoute route) {
  validate_datum(omega, psi);
  require_time_grid(ts);
  Method method = resolve_method(omega, psi, params.method);
  const auto pos = positive_times(ts);
  if (route == LossRoute::direct) {
    if (method == Method::mc || method == Method::mc_exterior) {
      detail::McOutput out;
      if (!pos.empty()) out = detail::mc_exterior(omega, psi, pos, params);
      Curve c = assemble(ts, out, Method::mc_exterior, 0.0, false, 0.0);
      c.descriptor = describe(omega, psi) + ", heat loss";
      return c;
    }
    if (method == Method::radial_quad) {
      auto prof = radial_profile(omega);
      if (!prof) throw ConfigurationError("radial_quad requires concentric balls and annuli");
      const auto datum = detail::radial_datum(*prof, psi);
      Curve c;
      c.t = ts;
      c.points.resize(ts.size());
      parallel_for(ts.size(), [&](std::size_t i) {
        Estimate e;
        e.method = Method::radial_quad;
        if (ts[i] > 0) {
          auto r = detail::radial_content(*prof, datum, omega.dim(), ts[i], params.quad,
                                          detail::RadialRegion::complement, 0);
          e.value = r.value[0];
          e.abs_error = r.error;
          e.n = r.evaluations;
          e.low_confidence = !r.converged;
        }
        c.points[i] = e;
      });
      c.descriptor = describe(omega, psi) + ", heat loss";
      return c;
    }
  }
  // difference route: F = H(0) - H(t)
  Curve h = heat_content_curve(omega, psi, ts, params);
  const double h0 = datum_integral(omega, psi);
  for (auto& p : h.points) p.value = h0 - p.value;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] == 0) h.points[i].value = 0.0;
  h.descriptor += ", heat loss";
  return h;
}

Estimate heat_loss(const Domain& omega, const InitialDatum& psi, double t, const ContentParams& params,
                   LossRoute route) {
  if (t < 0 || !std::isfinite(t)) throw DomainError("heat loss: t must be >= 0");
  return heat_loss_curve(omega, psi, {t}, params, route).points.front();
}

}  // namespace heatlab
