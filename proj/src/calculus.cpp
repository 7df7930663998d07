#include "heatlab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "content_methods.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab {

namespace {

constexpr double kLowConfidenceT = 1e-3;

Method derivative_method(const Domain& omega, const InitialDatum& psi, Method requested) {
  const Method m = resolve_method(omega, psi, requested);
  if (m == Method::mc_semigroup || m == Method::mc_exterior) return Method::mc;
  if (m == Method::kernel_quad) return Method::finite_difference;
  return m;
}

Estimate finite_difference(const Domain& omega, const InitialDatum& psi, double t, int order,
                           const ContentParams& params) {
  ContentParams p = params;
  p.method = resolve_method(omega, psi, Method::automatic);
  if (params.method != Method::finite_difference && params.method != Method::automatic) p.method = params.method;
  std::size_t evals = 0;
  auto f = [&](double s) {
    ++evals;
    return heat_content(omega, psi, s, p).value;
  };
  Estimate e;
  e.method = Method::finite_difference;
  const double h = t / 8;
  e.value = richardson_derivative(f, t, order, h, 2);
  // one level less is the error proxy
  e.abs_error = std::abs(e.value - richardson_derivative(f, t, order, h, 1));
  e.n = evals;
  e.low_confidence = is_stochastic(p.method);
  return e;
}

Estimate from_mc(const detail::McOutput& out, std::size_t j) {
  Estimate e;
  e.value = out.mean[static_cast<Eigen::Index>(j)];
  e.std_error = std::sqrt(std::max(0.0, out.cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
  e.n = out.n;
  e.method = Method::mc;
  return e;
}

Estimate deterministic_dH(const Domain& omega, const InitialDatum& psi, double t, int order, Method method,
                          const ContentParams& params) {
  auto d = detail::deterministic_content(omega, psi, t, method, params, order);
  Estimate e;
  e.method = method;
  e.value = d.value[order];
  e.abs_error = d.error * std::pow(t, -order);
  e.n = d.n;
  e.low_confidence = !d.converged;
  return e;
}

void check_order(int order) {
  if (order != 1 && order != 2) throw DomainError("dH: order must be 1 or 2");
}

double bonferroni_z(double z, std::size_t k) {
  if (k <= 1) return z;
  const double p = std::erfc(z / std::sqrt(2.0)) / static_cast<double>(k);
  return std::sqrt(2.0) * boost::math::erfc_inv(p);
}

struct Check {
  std::vector<std::size_t> idx;
  std::vector<double> w;
};

bool same_step(double d1, double d2, double scale) { return std::abs(d1 - d2) <= 1e-9 * scale; }

std::vector<Check> build_checks(const Curve& c, Property p) {
  std::vector<Check> checks;
  const std::size_t n = c.size();
  if (p == Property::decreasing || p == Property::strictly_decreasing) {
    for (std::size_t i = 0; i + 1 < n; ++i) checks.push_back({{i, i + 1}, {1.0, -1.0}});
    return checks;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double target = 2 * c.t[j] - c.t[i];
      auto it = std::lower_bound(c.t.begin() + static_cast<std::ptrdiff_t>(j) + 1, c.t.end(),
                                 target - 1e-9 * std::abs(target));
      if (it == c.t.end()) continue;
      const auto k = static_cast<std::size_t>(it - c.t.begin());
      if (same_step(c.t[j] - c.t[i], c.t[k] - c.t[j], std::max(std::abs(c.t[k]), 1e-300)))
        checks.push_back({{i, j, k}, {1.0, -2.0, 1.0}});
    }
  return checks;
}

}  // namespace

Estimate dH(const Domain& omega, const InitialDatum& psi, double t, int order, const ContentParams& params) {
  check_order(order);
  if (!(t > 0) || !std::isfinite(t)) throw DomainError("dH: t must be > 0");
  validate_datum(omega, psi);
  const Method method = derivative_method(omega, psi, params.method);
  Estimate e;
  if (method == Method::finite_difference) {
    e = finite_difference(omega, psi, t, order, params);
  } else if (method == Method::mc) {
    e = from_mc(detail::mc_content(omega, psi, {t}, params, order), 0);
  } else {
    e = deterministic_dH(omega, psi, t, order, method, params);
  }
  if (t < kLowConfidenceT) e.low_confidence = true;
  return e;
}

Curve dH_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts, int order,
               const ContentParams& params) {
  check_order(order);
  if (ts.empty()) throw ConfigurationError("time grid is empty");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0) || !std::isfinite(ts[i])) throw DomainError("dH: t must be > 0");
    if (i > 0 && !(ts[i] > ts[i - 1])) throw ConfigurationError("time grid must be strictly increasing");
  }
  validate_datum(omega, psi);
  const Method method = derivative_method(omega, psi, params.method);
  Curve c;
  c.t = ts;
  if (method == Method::mc) {
    auto out = detail::mc_content(omega, psi, ts, params, order);
    for (std::size_t j = 0; j < ts.size(); ++j) c.points.push_back(from_mc(out, j));
    c.covariance = out.cov;
  } else {
    c.points.resize(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      c.points[i] = method == Method::finite_difference ? finite_difference(omega, psi, ts[i], order, params)
                                                        : deterministic_dH(omega, psi, ts[i], order, method, params);
    });
  }
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] < kLowConfidenceT) c.points[i].low_confidence = true;
  c.descriptor = "d" + std::to_string(order) + "H/dt" + std::to_string(order);
  return c;
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::decreasing: return "decreasing";
    case Property::strictly_decreasing: return "strictly_decreasing";
    case Property::midpoint_convex: return "midpoint_convex";
    case Property::strictly_midpoint_convex: return "strictly_midpoint_convex";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Property property_from_string(std::string_view s) {
  for (Property p : {Property::decreasing, Property::strictly_decreasing, Property::midpoint_convex,
                     Property::strictly_midpoint_convex})
    if (to_string(p) == s) return p;
  throw UsageError("unknown property '" + std::string(s) + "'");
}

std::vector<double> with_midpoints(const std::vector<double>& ts) {
  std::vector<double> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) out.push_back(0.5 * (ts[i - 1] + ts[i]));
    out.push_back(ts[i]);
  }
  return out;
}

ScanReport scan(const Curve& c, Property property, const ScanOptions& opt) {
  if (c.size() < 3 || c.points.size() != c.size()) throw ConfigurationError("scan: curve needs at least 3 points");
  const auto checks = build_checks(c, property);
  if (checks.empty()) throw ConfigurationError("scan: grid has no arithmetic triples (t, t+d, t+2d)");

  ScanReport r;
  r.property = property;
  r.checks = checks.size();
  r.z_effective = opt.bonferroni ? bonferroni_z(opt.z, checks.size()) : opt.z;
  r.stochastic = std::any_of(c.points.begin(), c.points.end(), [](const Estimate& e) { return e.std_error > 0; });
  const bool strict = property == Property::strictly_decreasing || property == Property::strictly_midpoint_convex;

  std::vector<Witness> all;
  for (const auto& ch : checks) {
    Witness w;
    double var = 0, det = 0;
    for (std::size_t a = 0; a < ch.idx.size(); ++a) {
      w.t.push_back(c.t[ch.idx[a]]);
      w.margin += ch.w[a] * c.points[ch.idx[a]].value;
      det += std::abs(ch.w[a]) * c.points[ch.idx[a]].abs_error;
      for (std::size_t b = 0; b < ch.idx.size(); ++b) var += ch.w[a] * ch.w[b] * c.covariance_at(ch.idx[a], ch.idx[b]);
    }
    w.std_error = std::sqrt(std::max(0.0, var));
    w.uncertainty = r.z_effective * w.std_error + det + opt.tol;
    all.push_back(std::move(w));
  }

  auto holds = [](const Witness& w) { return w.margin > w.uncertainty; };
  auto reversed = [](const Witness& w) { return w.margin < -w.uncertainty; };
  const bool all_hold = std::all_of(all.begin(), all.end(), holds);
  const bool any_reversed = std::any_of(all.begin(), all.end(), reversed);

  if (r.stochastic) {
    r.verdict = all_hold ? Verdict::pass : (any_reversed ? Verdict::fail : Verdict::inconclusive);
  } else if (strict) {
    r.verdict = all_hold ? Verdict::pass : Verdict::fail;
  } else {
    r.verdict = any_reversed ? Verdict::fail : Verdict::pass;
  }

  std::function<bool(const Witness&)> pick;
  if (r.verdict == Verdict::fail)
    pick = (strict && !r.stochastic) ? std::function<bool(const Witness&)>([&](const Witness& w) { return !holds(w); })
                                     : std::function<bool(const Witness&)>(reversed);
  else if (r.verdict == Verdict::inconclusive)
    pick = [&](const Witness& w) { return !holds(w); };
  if (pick) {
    for (const auto& w : all)
      if (pick(w)) r.witnesses.push_back(w);
  } else {
    auto weakest = std::min_element(all.begin(), all.end(), [](const Witness& a, const Witness& b) {
      return a.margin - a.uncertainty < b.margin - b.uncertainty;
    });
    r.witnesses.push_back(*weakest);
  }
  return r;
}

}  // namespace heatlab
