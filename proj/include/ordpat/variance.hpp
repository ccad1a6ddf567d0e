#pragma once

#include "ordpat/rng.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordpat {

enum class Kernel { Bartlett, Parzen, QuadraticSpectral, Truncated };

[[nodiscard]] std::string kernel_name(Kernel k);
[[nodiscard]] Kernel parse_kernel(const std::string& name);
[[nodiscard]] double kernel_weight(Kernel k, double u) noexcept;

/// ceil(N^(1/3)).
[[nodiscard]] double default_bandwidth(std::size_t n);

struct LongRunVariance {
  double sigma2_hat = 0.0;
  Kernel kernel = Kernel::Bartlett;
  double bandwidth = 1.0;
  std::size_t length = 0;
  bool truncated = false;  // raw kernel sum was negative and was set to 0
};

/**
 * Kernel estimate of the long-run variance of a (window-level) sequence:
 *
 *   (1/M) sum_i sum_j k((i - j) / b) (f_i - mean)(f_j - mean)
 *
 * with M the sequence length. Throws std::invalid_argument for sequences
 * shorter than 2, non-finite entries, or bandwidth < 1.
 */
[[nodiscard]] LongRunVariance long_run_variance(const Eigen::Ref<const Eigen::VectorXd>& sequence,
                                                Kernel kernel = Kernel::Bartlett, double bandwidth = 0.0);

[[nodiscard]] double normal_quantile(double p);

struct Interval {
  double low = 0.0;
  double high = 0.0;
  double level = 0.95;
};

using Bounds = std::pair<double, double>;
inline constexpr Bounds kProbabilityBounds{0.0, 1.0};

/// point +/- z_{(1+level)/2} * sqrt(sigma2 / N), optionally clipped.
[[nodiscard]] Interval confidence_interval(double point, double sigma2, std::size_t n, double level,
                                           std::optional<Bounds> clip = std::nullopt);

struct VarianceEstimate {
  double point = 0.0;
  double sigma2_hat = 0.0;
  std::string method;  // kernel name, or "block-bootstrap"
  double bandwidth = 0.0;  // kernel bandwidth or bootstrap block length
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.95;
  bool truncated = false;
};

/// Mean of the sequence with its kernel long-run variance and CLT interval.
[[nodiscard]] VarianceEstimate kernel_interval(const Eigen::Ref<const Eigen::VectorXd>& sequence, double level,
                                               Kernel kernel = Kernel::Bartlett, double bandwidth = 0.0,
                                               std::optional<Bounds> clip = kProbabilityBounds);

/// One moving-block resample of {0, ..., m-1}: random blocks of consecutive indices, truncated to m.
[[nodiscard]] std::vector<std::size_t> block_resample(std::size_t m, std::size_t block, std::mt19937_64& rng);

/**
 * Moving-block bootstrap over an index set of size m.
 *
 * `statistic` maps a resampled index vector to an Eigen::VectorXd of k
 * statistics; returns a replicates x k matrix. Replicate r draws from
 * derive_seed(seed, 0, r).
 */
template <typename Statistic>
Eigen::MatrixXd moving_block_bootstrap(std::size_t m, std::size_t block, int replicates, std::uint64_t seed,
                                       Statistic&& statistic) {
  if (m == 0) throw std::invalid_argument("bootstrap: empty sample");
  if (block == 0 || block > m) throw std::invalid_argument("bootstrap: block length must lie in [1, m]");
  if (replicates < 2) throw std::invalid_argument("bootstrap: need at least 2 replicates");
  Eigen::MatrixXd out;
  for (int r = 0; r < replicates; ++r) {
    std::mt19937_64 rng(derive_seed(seed, 0, static_cast<std::uint64_t>(r)));
    const Eigen::VectorXd stats = statistic(block_resample(m, block, rng));
    if (r == 0) out.resize(replicates, stats.size());
    out.row(r) = stats.transpose();
  }
  return out;
}

}  // namespace ordpat
