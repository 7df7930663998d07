#include <cmath>

#include "content_methods.hpp"
#include "heatlab/heat_content.hpp"

namespace heatlab {

namespace {

Point axis_point(int m, double x1) {
  Point p = Point::Zero(m);
  p[0] = x1;
  return p;
}

}  // namespace

Domain two_ball_domain(double delta, int m) {
  if (!(delta > 0) || !std::isfinite(delta)) throw DomainError("two-ball: delta must be > 0");
  if (m < 1) throw DomainError("two-ball: m must be >= 1");
  const auto space = AmbientSpace::euclidean(m);
  return Domain::disjoint_union({Domain::ball(space, axis_point(m, -(1 + delta)), delta),
                                 Domain::ball(space, axis_point(m, 1 + delta), delta)});
}

// The image term e^{-|x+y|^2/4t}(...) over y in B_delta(c2) is the free term over B_delta(c1) = -B_delta(c2),
// so both are radial integrals about their own centres.
Estimate two_ball_temperature_dt(double delta, int m, const Point& x, double t, const QuadratureOptions& quad) {
  if (!(delta > 0)) throw DomainError("two-ball: delta must be > 0");
  if (!(t > 0)) throw DomainError("two-ball: t must be > 0");
  if (x.size() != m) throw DomainError("two-ball: point dimension does not match m");
  const Point c2 = axis_point(m, 1 + delta);
  const Point c1 = -c2;
  if (!((x - c2).norm() < delta)) throw DomainError("two-ball: x must lie in B_delta(c2)");

  detail::RadialDatum ball;
  ball.support = {{0.0, delta}};
  ball.psi = [](double) { return 1.0; };

  Estimate e;
  e.method = Method::radial_quad;
  for (const Point* c : {&c2, &c1}) {
    auto r = detail::radial_temperature(ball, m, (x - *c).norm(), t, quad, 1);
    e.value += r.value[1];
    e.abs_error += r.error / t;
    e.n += r.evaluations;
    e.low_confidence = e.low_confidence || !r.converged;
  }
  return e;
}

}  // namespace heatlab
