#pragma once

#include <string_view>
#include <vector>

#include "heatlab/heat_content.hpp"

namespace heatlab {

// d^order H / dt^order, order 1 or 2. Deterministic methods differentiate the kernel under the
// integral; mc uses the kernel-derivative weights on one shared sample set; finite_difference
// runs central Richardson differences (h = t/8, halved twice) on the automatically chosen method.
// Estimates at t < 1e-3 are flagged low_confidence.
Estimate dH(const Domain& omega, const InitialDatum& psi, double t, int order, const ContentParams& params = {});
Curve dH_curve(const Domain& omega, const InitialDatum& psi, const std::vector<double>& t_grid, int order,
               const ContentParams& params = {});

enum class Property { decreasing, strictly_decreasing, midpoint_convex, strictly_midpoint_convex };
enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Property p);
std::string_view to_string(Verdict v);
Property property_from_string(std::string_view s);

struct Witness {
  std::vector<double> t;  // the pair (decreasing) or triple (midpoint) of times
  double margin = 0;      // positive when the check holds
  double std_error = 0;   // combined, from the curve covariance
  double uncertainty = 0; // z_eff * std_error + deterministic error + tol
};

struct ScanOptions {
  double z = 4.0;
  double tol = 1e-10;  // absolute slack added to every check
  bool bonferroni = true;
};

struct ScanReport {
  Property property;
  Verdict verdict = Verdict::inconclusive;
  std::vector<Witness> witnesses;  // failing checks, else unresolved ones, else the weakest check
  std::size_t checks = 0;
  double z_effective = 0;
  bool stochastic = false;

  bool violation_found() const { return verdict == Verdict::fail; }
};

// Adjacent pairs for monotonicity; arithmetic triples (t, t + d, t + 2d) for midpoint convexity.
// Stochastic curves: pass when every check clears its uncertainty, fail when one is reversed
// beyond it, inconclusive otherwise. Deterministic curves resolve to pass or fail.
ScanReport scan(const Curve& curve, Property property, const ScanOptions& options = {});

// Adds midpoints of consecutive grid points so that midpoint scans have triples.
std::vector<double> with_midpoints(const std::vector<double>& t_grid);

}  // namespace heatlab
