#include "ordpat/variance.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numbers>

namespace ordpat {

std::string kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Bartlett: return "bartlett";
    case Kernel::Parzen: return "parzen";
    case Kernel::QuadraticSpectral: return "quadratic-spectral";
    case Kernel::Truncated: return "truncated";
  }
  return "bartlett";
}

Kernel parse_kernel(const std::string& name) {
  if (name == "bartlett") return Kernel::Bartlett;
  if (name == "parzen") return Kernel::Parzen;
  if (name == "quadratic-spectral" || name == "qs") return Kernel::QuadraticSpectral;
  if (name == "truncated" || name == "uniform") return Kernel::Truncated;
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

double kernel_weight(Kernel k, double u) noexcept {
  const double a = std::abs(u);
  switch (k) {
    case Kernel::Bartlett:
      return a < 1.0 ? 1.0 - a : 0.0;
    case Kernel::Parzen:
      if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
      if (a <= 1.0) return 2.0 * std::pow(1.0 - a, 3);
      return 0.0;
    case Kernel::QuadraticSpectral: {
      if (a == 0.0) return 1.0;
      const double x = 6.0 * std::numbers::pi * a / 5.0;
      return 25.0 / (12.0 * std::numbers::pi * std::numbers::pi * a * a) * (std::sin(x) / x - std::cos(x));
    }
    case Kernel::Truncated:
      return a <= 1.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double default_bandwidth(std::size_t n) {
  if (n == 0) throw std::invalid_argument("default_bandwidth: empty sample");
  return std::ceil(std::cbrt(static_cast<double>(n)) - 1e-12);
}

LongRunVariance long_run_variance(const Eigen::Ref<const Eigen::VectorXd>& sequence, Kernel kernel,
                                  double bandwidth) {
  const Eigen::Index m = sequence.size();
  if (m < 2) throw std::invalid_argument("long_run_variance: need at least 2 observations");
  if (!sequence.allFinite()) throw std::invalid_argument("long_run_variance: non-finite observation");
  if (bandwidth == 0.0) bandwidth = default_bandwidth(static_cast<std::size_t>(m));
  if (!(bandwidth >= 1.0)) throw std::invalid_argument("long_run_variance: bandwidth must be >= 1");

  LongRunVariance out;
  out.kernel = kernel;
  out.bandwidth = bandwidth;
  out.length = static_cast<std::size_t>(m);
  // rounding in the mean would otherwise leave a tiny positive value
  if (sequence.minCoeff() == sequence.maxCoeff()) return out;

  const Eigen::VectorXd centered = sequence.array() - sequence.mean();
  const bool compact = kernel != Kernel::QuadraticSpectral;
  const Eigen::Index max_lag =
      compact ? std::min<Eigen::Index>(m - 1, static_cast<Eigen::Index>(std::floor(bandwidth))) : m - 1;

  double sum = centered.squaredNorm();
  for (Eigen::Index h = 1; h <= max_lag; ++h) {
    const double w = kernel_weight(kernel, static_cast<double>(h) / bandwidth);
    if (w == 0.0) continue;
    sum += 2.0 * w * centered.head(m - h).dot(centered.tail(m - h));
  }
  out.sigma2_hat = sum / static_cast<double>(m);
  if (out.sigma2_hat < 0.0) {
    out.sigma2_hat = 0.0;
    out.truncated = true;
  }
  return out;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

Interval confidence_interval(double point, double sigma2, std::size_t n, double level, std::optional<Bounds> clip) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("variance must be non-negative");
  if (n == 0) throw std::invalid_argument("sample size must be positive");
  const double half = normal_quantile((1.0 + level) / 2.0) * std::sqrt(sigma2 / static_cast<double>(n));
  Interval ci{point - half, point + half, level};
  if (clip) {
    ci.low = std::clamp(ci.low, clip->first, clip->second);
    ci.high = std::clamp(ci.high, clip->first, clip->second);
  }
  return ci;
}

VarianceEstimate kernel_interval(const Eigen::Ref<const Eigen::VectorXd>& sequence, double level, Kernel kernel,
                                 double bandwidth, std::optional<Bounds> clip) {
  const LongRunVariance lrv = long_run_variance(sequence, kernel, bandwidth);
  VarianceEstimate v;
  v.point = sequence.mean();
  v.sigma2_hat = lrv.sigma2_hat;
  v.method = kernel_name(kernel);
  v.bandwidth = lrv.bandwidth;
  v.truncated = lrv.truncated;
  const Interval ci = confidence_interval(v.point, v.sigma2_hat, lrv.length, level, clip);
  v.ci_low = ci.low;
  v.ci_high = ci.high;
  v.level = level;
  return v;
}

std::vector<std::size_t> block_resample(std::size_t m, std::size_t block, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> start(0, m - block);
  std::vector<std::size_t> idx;
  idx.reserve(m + block);
  while (idx.size() < m) {
    const std::size_t s = start(rng);
    for (std::size_t i = 0; i < block && idx.size() < m; ++i) idx.push_back(s + i);
  }
  return idx;
}

}  // namespace ordpat
