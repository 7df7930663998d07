#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "heatlab/core.hpp"
#include "heatlab/geometry.hpp"

namespace heatlab {

namespace detail {

template <typename Scalar>
void require_positive_time(Scalar t) {
  if (!(t > Scalar(0))) throw DomainError("heat kernel: t must be > 0");
}

// exp(log_prefactor - b/t); once the Gaussian exponent passes -700 the product is formed in log space
template <typename Scalar>
Scalar gaussian_factor(Scalar log_prefactor, Scalar exponent) {
  using std::exp;
  if (exponent < Scalar(-700)) return exp(log_prefactor + exponent);
  return exp(log_prefactor) * exp(exponent);
}

}  // namespace detail

// One kernel evaluation site. b = |x - y|^2 / 4 is cached at construction.
template <typename Scalar = double>
struct KernelEvalT {
  int m;
  Scalar t;
  Scalar b;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x, y;

  template <typename DX, typename DY>
  KernelEvalT(int dim, const Eigen::MatrixBase<DX>& xx, const Eigen::MatrixBase<DY>& yy, Scalar tt)
      : m(dim), t(tt), b((xx - yy).squaredNorm() / Scalar(4)), x(xx), y(yy) {
    if (xx.size() != dim || yy.size() != dim) throw DomainError("kernel eval: dimension mismatch");
    detail::require_positive_time(t);
  }
};
using KernelEval = KernelEvalT<double>;

// (4 pi t)^{-m/2} exp(-b/t) as a function of the quarter squared distance b.
template <typename Scalar>
Scalar heat_kernel_b(int m, Scalar b, Scalar t) {
  using std::log;
  detail::require_positive_time(t);
  const Scalar logpre = Scalar(-0.5) * m * log(Scalar(4) * std::numbers::pi_v<Scalar> * t);
  return detail::gaussian_factor(logpre, -b / t);
}

template <typename Scalar>
Scalar log_heat_kernel_b(int m, Scalar b, Scalar t) {
  using std::log;
  detail::require_positive_time(t);
  return Scalar(-0.5) * m * log(Scalar(4) * std::numbers::pi_v<Scalar> * t) - b / t;
}

// Multiplier q with d^k/dt^k p = q * p, k in {0, 1, 2}.
template <typename Scalar>
Scalar time_derivative_factor(int m, Scalar b, Scalar t, int order) {
  const Scalar s = b / t;
  switch (order) {
    case 0:
      return Scalar(1);
    case 1:
      return (s - Scalar(0.5) * m) / t;
    case 2: {
      const Scalar q = Scalar(0.5) * (m + 2);
      return ((q - s) * (q - s) - q) / (t * t);
    }
    default:
      throw DomainError("heat kernel time derivative: order must be 1 or 2");
  }
}

template <typename Scalar>
Scalar heat_kernel(const KernelEvalT<Scalar>& e) {
  return heat_kernel_b(e.m, e.b, e.t);
}

template <typename DX, typename DY>
typename DX::Scalar heat_kernel(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                                typename DX::Scalar t) {
  using Scalar = typename DX::Scalar;
  return heat_kernel_b<Scalar>(static_cast<int>(x.size()), (x - y).squaredNorm() / Scalar(4), t);
}

template <typename Scalar>
Scalar heat_kernel_time_derivative(const KernelEvalT<Scalar>& e, int order) {
  if (order != 1 && order != 2) throw DomainError("heat kernel time derivative: order must be 1 or 2");
  return time_derivative_factor(e.m, e.b, e.t, order) * heat_kernel(e);
}

// Neumann kernel of the half-space {x_1 > 0}: free kernel plus the image of y reflected across x_1 = 0.
template <typename Scalar>
Scalar neumann_halfspace_kernel(const KernelEvalT<Scalar>& e) {
  if (!(e.x[0] > 0) || !(e.y[0] > 0))
    throw DomainError("neumann half-space kernel: first coordinates must be positive");
  auto yr = e.y;
  yr[0] = -yr[0];
  const Scalar b_image = (e.x - yr).squaredNorm() / Scalar(4);
  return heat_kernel_b(e.m, e.b, e.t) + heat_kernel_b(e.m, b_image, e.t);
}

// Wrapped Gaussian on R / L Z: sum over images n L, symmetric in n, stopped once a
// new pair of terms is below 1e-17 of the running sum.
template <typename Scalar>
Scalar circle_kernel(Scalar x, Scalar y, Scalar t, Scalar circumference) {
  using std::exp;
  using std::sqrt;
  detail::require_positive_time(t);
  if (!(circumference > 0)) throw DomainError("circle kernel: circumference must be > 0");
  const Scalar d = wrap_centered(x - y, circumference);
  const Scalar pre = Scalar(1) / sqrt(Scalar(4) * std::numbers::pi_v<Scalar> * t);
  Scalar sum = pre * exp(-d * d / (Scalar(4) * t));
  for (long n = 1;; ++n) {
    const Scalar a = d + n * circumference, c = d - n * circumference;
    const Scalar term = pre * (exp(-a * a / (Scalar(4) * t)) + exp(-c * c / (Scalar(4) * t)));
    sum += term;
    const bool past_peak = n * circumference > std::abs(d) + sqrt(t);
    if (past_peak && term < Scalar(1e-17) * sum) break;
  }
  return sum;
}

template <typename Scalar>
Scalar circle_kernel(const KernelEvalT<Scalar>& e, Scalar circumference) {
  return circle_kernel(e.x[0], e.y[0], e.t, circumference);
}

}  // namespace heatlab
