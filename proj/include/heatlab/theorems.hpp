#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heatlab/calculus.hpp"
#include "heatlab/heat_content.hpp"

namespace heatlab {

struct SubCheck {
  std::string description;
  std::vector<double> values;  // the computed quantities entering the relation
  std::string relation;        // e.g. "H''(t) - 17/16 t^-2 H(t) > 0"
  double margin = 0;           // positive when the relation holds
  double uncertainty = 0;
  Verdict verdict = Verdict::inconclusive;
};

struct VerificationReport {
  int theorem = 0;
  std::vector<std::pair<std::string, std::string>> config;  // printable parameters, in a fixed order
  std::vector<SubCheck> checks;
  std::vector<std::string> notes;
  Verdict overall = Verdict::inconclusive;

  void add(SubCheck c) { checks.push_back(std::move(c)); }
  // fail if any check fails, else inconclusive if any is, else pass
  void finalize();
};

// 4m^2 + 4m - 7
double theorem5_constant(int m);

struct VerifyOptions {
  ContentParams params;
  ScanOptions scan;
};

// Monotonicity and midpoint convexity of H for psi = 1. Midpoints are inserted into the grid so
// that the convexity scan has triples. On the circle the strict forms and the large-time limit
// |Omega|^2 / L are checked as well (the full circle must come out constant and not strict).
VerificationReport verify_thm1(const Domain& omega, const std::vector<double>& t_grid, const VerifyOptions& opt = {});

// The four derivative bounds with the case split at t = diam^2.
VerificationReport verify_thm5(const Domain& omega, const std::vector<double>& t_grid, const VerifyOptions& opt = {});

struct CmThreshold {
  int m = 0;
  double theta_min = 0;  // e^{9/(2m)}: the objective is defined for theta above this
  double theta_star = 0;
  double objective_min = 0;  // c_m^2
  double c_m = 0;
  std::vector<std::pair<double, double>> curve;  // (theta, objective) on a log grid
};

// 32 theta log( 2^{5m/2} Gamma((m+2)/2) / ((2^m - 1)(e^{-9/4} - theta^{-m/2})) )
double cm_objective(int m, double theta);
CmThreshold cm_threshold(int m);

// Ball B_1(0) with the annulus 2 < |x| < c, psi the indicator of the ball.
Domain annulus_experiment_domain(int m, double c);
InitialDatum annulus_experiment_datum(int m);

// F(1) > F(theta) > 0 from exterior-jump Monte Carlo on common samples, at 5 sigma, plus the
// analytic lower bound at t = 1 and upper bound at theta.
VerificationReport verify_thm2(int m, double c, double theta, std::size_t samples, std::uint64_t seed = 20240805);

// Points of the default grid: axis points through the centres plus off-axis points at radius delta/2.
std::vector<Point> thm3_default_x_grid(double delta, int m);
std::vector<double> thm3_default_t_grid();

// Sign of du/dt on B_delta(c2) on the grid, the pointwise bound for t >= 4 delta^2, and the
// numerical constants the sign argument rests on.
VerificationReport verify_thm3(double delta, int m, const std::vector<Point>& x_grid,
                               const std::vector<double>& t_grid);

// Radial power datum on the unit ball: decreasing scan, midpoint convexity violations
// H(0) + H(2 eps) - 2 H(eps) < 0, and the small-time slope of log F against log t.
struct Thm4Options {
  std::vector<double> scan_grid;    // empty: 20 log points in [1e-3, 10] with midpoints
  std::vector<double> slope_grid;   // empty: 10 log points in [1e-4, 1e-3]
  double slope_tolerance = 0.1;
  QuadratureOptions quad{1e-16, 1e-12, 4000};
};
VerificationReport verify_thm4(double alpha, int m, const std::vector<double>& eps_grid,
                               const Thm4Options& opt = {});

std::vector<double> log_grid(double a, double b, std::size_t n);
std::vector<double> lin_grid(double a, double b, std::size_t n);

}  // namespace heatlab
