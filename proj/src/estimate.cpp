#include <array>
#include <string>
#include <utility>

#include "heatlab/core.hpp"
#include "heatlab/heat_content.hpp"

namespace heatlab {

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 10> kNames{{
    {Method::mc, "mc"},
    {Method::mc_semigroup, "mc_semigroup"},
    {Method::mc_exterior, "mc_exterior"},
    {Method::exact1d, "exact1d"},
    {Method::box_exact, "box_exact"},
    {Method::radial_quad, "radial_quad"},
    {Method::eigensum, "eigensum"},
    {Method::kernel_quad, "kernel_quad"},
    {Method::finite_difference, "finite_difference"},
    {Method::automatic, "auto"},
}};
}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [k, v] : kNames)
    if (k == m) return v;
  return "unknown";
}

Method method_from_string(std::string_view s) {
  for (const auto& [k, v] : kNames)
    if (v == s) return k;
  throw UsageError("unknown method '" + std::string(s) + "'");
}

bool is_stochastic(Method m) { return m == Method::mc || m == Method::mc_semigroup || m == Method::mc_exterior; }

double Curve::covariance_at(std::size_t i, std::size_t j) const {
  if (covariance.size() > 0) return covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return i == j ? points[i].std_error * points[i].std_error : 0.0;
}

}  // namespace heatlab
