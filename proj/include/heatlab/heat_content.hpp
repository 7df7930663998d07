#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "heatlab/core.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/quadrature.hpp"

namespace heatlab {

// Initial temperature psi on the domain.
class InitialDatum {
 public:
  struct ConstantOne {};
  // indicator of a union component (or of several components) of the domain
  struct IndicatorOf {
    Domain sub;
  };
  // (1 - |y - c| / R)^alpha on the ball B_R(c); for the unit ball this is |1 - |y||^alpha
  struct RadialPower {
    double alpha;
  };
  using Kind = std::variant<ConstantOne, IndicatorOf, RadialPower>;

  static InitialDatum one() { return InitialDatum(ConstantOne{}); }
  static InitialDatum indicator(Domain sub) { return InitialDatum(IndicatorOf{std::move(sub)}); }
  static InitialDatum radial_power(double alpha);

  const Kind& kind() const { return kind_; }
  bool is_one() const { return std::holds_alternative<ConstantOne>(kind_); }

 private:
  explicit InitialDatum(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

// Checks the datum against the domain: indicators must select union components of the
// domain, radial powers need a single ball. Throws ConfigurationError otherwise.
void validate_datum(const Domain& omega, const InitialDatum& psi);

double evaluate_datum(const Domain& omega, const InitialDatum& psi, const Point& y);
double datum_sup(const InitialDatum& psi);
// integral of psi over the domain, in closed form; equals H(0)
double datum_integral(const Domain& omega, const InitialDatum& psi);
// smallest set carrying psi (the indicator's sub-domain, else the domain itself)
Domain datum_support(const Domain& omega, const InitialDatum& psi);

struct ContentParams {
  Method method = Method::automatic;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20240805;
  QuadratureOptions quad{1e-15, 1e-11, 4000};
  double split = 0.5;             // mc_semigroup: H(t) = int u(.; split t) u(.; (1 - split) t)
  double truncation_sigmas = 8.0; // mc_semigroup proposal radius diam + k sqrt(2t)
  bool uniform_temperature_mc = false;  // temperature mc: kernel average instead of Gaussian jumps
  std::size_t circle_max_modes = 1'000'000;
};

// The method auto-selection: eigensum on the circle, exact1d / box_exact for intervals and
// boxes with psi = 1 or box indicators, radial_quad for concentric radial data, mc otherwise.
Method resolve_method(const Domain& omega, const InitialDatum& psi, Method requested);

// Sampled t -> value. For Monte Carlo curves built with common random numbers, covariance
// holds the joint covariance of the point estimates; otherwise it is diagonal or empty.
struct Curve {
  std::vector<double> t;
  std::vector<Estimate> points;
  std::string descriptor;
  Eigen::MatrixXd covariance;

  std::size_t size() const { return t.size(); }
  double covariance_at(std::size_t i, std::size_t j) const;
};

Estimate temperature(const Domain& omega, const InitialDatum& psi, const Point& x, double t,
                     const ContentParams& params = {});

// Time derivative d^order u / dt^order at x, order 1 or 2 (exact, radial_quad, or mc).
Estimate temperature_dt(const Domain& omega, const InitialDatum& psi, const Point& x, double t, int order,
                        const ContentParams& params = {});

Estimate heat_content(const Domain& omega, const InitialDatum& psi, double t, const ContentParams& params = {});

// H on a grid. Monte Carlo methods share one sample set across the grid.
Curve heat_content_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& t_grid,
                         const ContentParams& params = {});

enum class LossRoute { difference, direct };

// F(t) = H(0) - H(t). The direct route integrates the mass that lands outside the domain
// (Monte Carlo exterior jumps, or radial quadrature over the complement).
Estimate heat_loss(const Domain& omega, const InitialDatum& psi, double t, const ContentParams& params = {},
                   LossRoute route = LossRoute::direct);
Curve heat_loss_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& t_grid,
                      const ContentParams& params = {}, LossRoute route = LossRoute::direct);

// Circle spectrum: constant mode plus cos/sin pairs for k = 1..K.
struct CircleMode {
  double mu;
  double coeff;  // integral of the normalized eigenfunction over the arcs
};
struct CircleSpectrum {
  double circumference;
  std::vector<CircleMode> modes;
};
CircleSpectrum circle_spectrum(const Domain& arcs, std::size_t k_max);
// sum_j exp(-t mu_j) mu_j^order coeff_j^2 with the sign (-1)^order
double eigensum(const CircleSpectrum& s, double t, int order = 0);

// Eigensum heat content on the circle. K = 0 picks the truncation from exp(-mu_K t) < 1e-16.
// When that needs more than circle_max_modes the result falls back to kernel quadrature and
// is flagged low_confidence.
Estimate heat_content_circle(const Domain& arcs, double t, std::size_t k = 0, const ContentParams& params = {});
// The fallback route, exposed for cross-checks: quadrature of the wrapped kernel against
// the arc overlap function.
Estimate heat_content_circle_quadrature(const Domain& arcs, double t, const QuadratureOptions& quad = {});

// du/dt on the two-ball set B_d(c1) u B_d(c2), c_{1,2} = (-/+ (1 + d), 0, ..., 0), at x in
// B_d(c2), written with the Neumann half-space kernel on {x_1 > 0}.
Estimate two_ball_temperature_dt(double delta, int m, const Point& x, double t,
                                 const QuadratureOptions& quad = {1e-15, 1e-10, 4000});

Domain two_ball_domain(double delta, int m);

}  // namespace heatlab
