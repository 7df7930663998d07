#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace heatlab {

using Point = Eigen::VectorXd;

// Error taxonomy. The CLI maps ParseError to exit 65, UsageError to 64 and IoError to 74.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Argument outside the mathematical domain of an operation (t <= 0, x outside a ball, ...).
struct DomainError : Error {
  using Error::Error;
};
// Invalid object construction (negative radius, overlapping union parts, ...).
struct InvalidGeometry : Error {
  using Error::Error;
};
// Method and shape/datum pairing not supported.
struct ConfigurationError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct UsageError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

enum class Method {
  mc,            // Gaussian-jump pairs (Y uniform on supp psi, X = Y + sqrt(2t) Z)
  mc_semigroup,  // integral of u(.;a) u(.;b) over a truncated ball, a + b = t
  mc_exterior,   // heat loss: jumps landing outside the domain
  exact1d,       // erf closed forms on intervals (and circle images)
  box_exact,     // products of 1-D interval factors
  radial_quad,   // nested radius / angle quadrature about a common center
  eigensum,      // circle spectral expansion
  kernel_quad,   // circle: quadrature of the wrapped kernel against the overlap function
  finite_difference,
  automatic,
};

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);
bool is_stochastic(Method m);

// A computed value. Deterministic methods report std_error == 0 and put their
// quadrature or truncation error estimate in abs_error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  Method method = Method::exact1d;
  double abs_error = 0.0;
  bool low_confidence = false;

  // half-width used for margin tests: z standard errors plus the deterministic bound
  double uncertainty(double z) const { return z * std_error + abs_error; }
};

}  // namespace heatlab
