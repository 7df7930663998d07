#pragma once

// Internal entry points behind heat_content.hpp.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "heatlab/geometry.hpp"
#include "heatlab/heat_content.hpp"
#include "heatlab/quadrature.hpp"
#include "heatlab/random.hpp"

namespace heatlab::detail {

// (value, d/dt, d^2/dt^2)
using Derivs = Eigen::Array3d;

// --- erf closed forms -------------------------------------------------------

// int_{x in (a,b)} int_{y in (c,d)} g_t(x - y) with its first two t-derivatives
Derivs interval_pair(double a, double b, double c, double d, double t);
// mass of the Gaussian centred at x landing in (c, d), with t-derivatives
Derivs interval_mass(double x, double c, double d, double t);

Derivs box_content(const std::vector<Box>& xs, const std::vector<Box>& ys, double t);
Derivs box_temperature(const std::vector<Box>& ys, const Point& x, double t);

Derivs circle_image_content(const std::vector<Arc>& xs, const std::vector<Arc>& ys, double circumference,
                            double t);
Derivs circle_image_temperature(const std::vector<Arc>& ys, double circumference, double x, double t);

// --- radial quadrature --------------------------------------------------------

struct RadialDatum {
  std::vector<RadialShell> support;
  std::function<double(double)> psi;  // as a function of the radius
};

struct RadialResult {
  Derivs value = Derivs::Zero();
  double error = 0;
  std::size_t evaluations = 0;
  bool converged = true;
};

enum class RadialRegion { inside, complement };

RadialResult radial_content(const RadialProfile& omega, const RadialDatum& psi, int m, double t,
                            const QuadratureOptions& opt, RadialRegion region = RadialRegion::inside,
                            int max_order = 2);
RadialResult radial_temperature(const RadialDatum& psi, int m, double rho, double t, const QuadratureOptions& opt,
                                int max_order = 2);

// --- Monte Carlo --------------------------------------------------------------

struct McOutput {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // covariance of the mean estimates
  std::size_t n = 0;
};

// fills one row of per-sample contributions, one column per output
using SampleFn = std::function<void(RandomStream&, Eigen::Ref<Eigen::RowVectorXd>)>;

constexpr std::size_t kChunkSize = 8192;

// Runs n samples in fixed chunks with substreams keyed by (seed, chunk); chunk statistics are
// merged in chunk order, so the output is independent of the worker count.
McOutput run_mc(std::size_t n, std::uint64_t seed, int outputs, const SampleFn& sample);

// Estimators over a t-grid (all t > 0), sharing one sample set across the grid.
// content: |S| psi(Y) 1_Omega(Y + sqrt(2t) Z) times the order-k kernel derivative factor in |Z|^2 / 2
McOutput mc_content(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                    const ContentParams& params, int order);
// exterior: |S| psi(Y) 1_{complement}(Y + sqrt(2t) Z)
McOutput mc_exterior(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                     const ContentParams& params);
// semigroup: |B_R| 1_Omega(Z + sqrt(2a) W1) psi 1_Omega(Z + sqrt(2b) W2), Z uniform on B_R
McOutput mc_semigroup(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                      const ContentParams& params);
// temperature at x: Gaussian jumps (order 0) or uniform kernel average (any order)
McOutput mc_temperature(const Domain& omega, const InitialDatum& psi, const Point& x,
                        const std::vector<double>& ts, const ContentParams& params, int order);

// --- shared dispatch ------------------------------------------------------------

struct DeterministicDerivs {
  Derivs value = Derivs::Zero();
  double error = 0;
  std::size_t n = 0;
  bool converged = true;
};

// H and its first two t-derivatives by a deterministic method (exact1d, box_exact, radial_quad, eigensum)
DeterministicDerivs deterministic_content(const Domain& omega, const InitialDatum& psi, double t, Method method,
                                          const ContentParams& params, int max_order);

RadialDatum radial_datum(const RadialProfile& omega, const InitialDatum& psi);
std::vector<Box> datum_boxes(const Domain& omega, const InitialDatum& psi);

}  // namespace heatlab::detail
