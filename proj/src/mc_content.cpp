#include <algorithm>
#include <cmath>

#include "content_methods.hpp"
#include "heatlab/kernels.hpp"
#include "heatlab/parallel.hpp"

namespace heatlab::detail {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ChunkStats {
  std::size_t n = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd m2;  // centred cross-product sums
};

void require_samples(std::size_t n) {
  if (n < 2) throw ConfigurationError("monte carlo: need at least 2 samples");
}

Point gaussian_vector(RandomStream& rs, int m) {
  Point z(m);
  for (int i = 0; i < m; ++i) z[i] = rs.normal();
  return z;
}

}  // namespace

McOutput run_mc(std::size_t n, std::uint64_t seed, int outputs, const SampleFn& sample) {
  require_samples(n);
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkStats> stats(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t rows = std::min(kChunkSize, n - c * kChunkSize);
    RowMatrix x(rows, outputs);
    RandomStream rs(seed, c);
    for (std::size_t i = 0; i < rows; ++i) sample(rs, x.row(i));
    ChunkStats s;
    s.n = rows;
    s.mean = x.colwise().mean().transpose();
    RowMatrix centred = x.rowwise() - s.mean.transpose();
    s.m2 = centred.transpose() * centred;
    stats[c] = std::move(s);
  });
  // Chan et al. pairwise update, folded in chunk order
  ChunkStats acc = std::move(stats[0]);
  for (std::size_t c = 1; c < chunks; ++c) {
    const auto& b = stats[c];
    const double na = static_cast<double>(acc.n), nb = static_cast<double>(b.n);
    const Eigen::VectorXd delta = b.mean - acc.mean;
    acc.mean += delta * (nb / (na + nb));
    acc.m2 += b.m2 + delta * delta.transpose() * (na * nb / (na + nb));
    acc.n += b.n;
  }
  McOutput out;
  out.n = acc.n;
  out.mean = acc.mean;
  out.cov = acc.m2 / (static_cast<double>(acc.n - 1) * static_cast<double>(acc.n));
  return out;
}

McOutput mc_content(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                    const ContentParams& params, int order) {
  const Domain support = datum_support(omega, psi);
  const double volume = measure(support);
  const int m = omega.dim();
  const int k = static_cast<int>(ts.size());
  std::vector<double> scale(k);
  for (int j = 0; j < k; ++j) scale[j] = std::sqrt(2 * ts[j]);
  const double q = 0.5 * (m + 2);
  auto sample = [&](RandomStream& rs, Eigen::Ref<Eigen::RowVectorXd> row) {
    const Point y = sample_uniform(support, rs);
    const double w = volume * evaluate_datum(omega, psi, y);
    const Point z = gaussian_vector(rs, m);
    const double s = 0.5 * z.squaredNorm();  // b / t
    for (int j = 0; j < k; ++j) {
      if (w == 0 || !contains(omega, y + scale[j] * z)) {
        row[j] = 0;
        continue;
      }
      const double t = ts[j];
      double f = 1;
      if (order == 1) f = (s - 0.5 * m) / t;
      else if (order == 2) f = ((q - s) * (q - s) - q) / (t * t);
      row[j] = w * f;
    }
  };
  return run_mc(params.samples, params.seed, k, sample);
}

McOutput mc_exterior(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                     const ContentParams& params) {
  const Domain support = datum_support(omega, psi);
  const double volume = measure(support);
  const int m = omega.dim();
  const int k = static_cast<int>(ts.size());
  std::vector<double> scale(k);
  for (int j = 0; j < k; ++j) scale[j] = std::sqrt(2 * ts[j]);
  auto sample = [&](RandomStream& rs, Eigen::Ref<Eigen::RowVectorXd> row) {
    const Point y = sample_uniform(support, rs);
    const double w = volume * evaluate_datum(omega, psi, y);
    const Point z = gaussian_vector(rs, m);
    for (int j = 0; j < k; ++j) row[j] = (w != 0 && !contains(omega, y + scale[j] * z)) ? w : 0.0;
  };
  return run_mc(params.samples, params.seed, k, sample);
}

McOutput mc_semigroup(const Domain& omega, const InitialDatum& psi, const std::vector<double>& ts,
                      const ContentParams& params) {
  if (!(params.split > 0 && params.split < 1)) throw ConfigurationError("mc_semigroup: split must lie in (0, 1)");
  const int m = omega.dim();
  const int k = static_cast<int>(ts.size());
  const bool circle = omega.space().is_circle();
  const double circumference = omega.space().circumference();
  const Point anchor = reference_point(omega);
  const double diam = diameter(omega);
  const Domain unit = circle ? omega : Domain::ball(omega.space(), Point::Zero(m), 1.0);
  std::vector<double> radius(k), weight(k), sa(k), sb(k);
  for (int j = 0; j < k; ++j) {
    radius[j] = diam + params.truncation_sigmas * std::sqrt(2 * ts[j]);
    weight[j] = circle ? circumference : unit_ball_volume(m) * std::pow(radius[j], m);
    sa[j] = std::sqrt(2 * params.split * ts[j]);
    sb[j] = std::sqrt(2 * (1 - params.split) * ts[j]);
  }
  auto sample = [&](RandomStream& rs, Eigen::Ref<Eigen::RowVectorXd> row) {
    Point u(m);
    if (circle) u[0] = rs.uniform() * circumference;
    else u = sample_uniform(unit, rs);
    const Point w1 = gaussian_vector(rs, m);
    const Point w2 = gaussian_vector(rs, m);
    for (int j = 0; j < k; ++j) {
      const Point z = circle ? u : Point(anchor + radius[j] * u);
      const Point x1 = z + sa[j] * w1;
      if (!contains(omega, x1)) {
        row[j] = 0;
        continue;
      }
      const Point x2 = z + sb[j] * w2;
      row[j] = contains(omega, x2) ? weight[j] * evaluate_datum(omega, psi, x2) : 0.0;
    }
  };
  return run_mc(params.samples, params.seed, k, sample);
}

McOutput mc_temperature(const Domain& omega, const InitialDatum& psi, const Point& x, const std::vector<double>& ts,
                        const ContentParams& params, int order) {
  const int m = omega.dim();
  const int k = static_cast<int>(ts.size());
  if (!params.uniform_temperature_mc && order == 0) {
    auto sample = [&](RandomStream& rs, Eigen::Ref<Eigen::RowVectorXd> row) {
      const Point z = gaussian_vector(rs, m);
      for (int j = 0; j < k; ++j) {
        const Point y = x + std::sqrt(2 * ts[j]) * z;
        row[j] = contains(omega, y) ? evaluate_datum(omega, psi, y) : 0.0;
      }
    };
    return run_mc(params.samples, params.seed, k, sample);
  }
  if (omega.space().is_circle()) throw ConfigurationError("temperature mc: kernel average not available on the circle");
  const Domain support = datum_support(omega, psi);
  const double volume = measure(support);
  auto sample = [&](RandomStream& rs, Eigen::Ref<Eigen::RowVectorXd> row) {
    const Point y = sample_uniform(support, rs);
    const double w = volume * evaluate_datum(omega, psi, y);
    const double b = 0.25 * (x - y).squaredNorm();
    for (int j = 0; j < k; ++j)
      row[j] = w * time_derivative_factor(m, b, ts[j], order) * heat_kernel_b(m, b, ts[j]);
  };
  return run_mc(params.samples, params.seed, k, sample);
}

}  // namespace heatlab::detail
