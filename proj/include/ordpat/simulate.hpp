#pragma once

#include "ordpat/dependence.hpp"
#include "ordpat/flood.hpp"
#include "ordpat/metric.hpp"
#include "ordpat/spatial.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ordpat {

/**
 * Poisson INGARCH(p, q) with lags 1..p on counts and 1..q on conditional means:
 *
 *   Z_t | past ~ Poi(nu_t),  nu_t = beta0 + sum_i beta_i Z_{t-i} + sum_j alpha_j nu_{t-j}
 *
 * The recursion starts at the stationary mean and the first burn_in values
 * are discarded. With p = 1, q = 0 this is the model the hydrology
 * literature sometimes labels "INAR(1)".
 */
struct IngarchSpec {
  double beta0 = 2.0;
  std::vector<double> beta;   // feedback on past counts
  std::vector<double> alpha;  // feedback on past conditional means
  std::size_t length = 1000;
  std::uint64_t seed = 0;
  std::size_t burn_in = 500;
};

void validate(const IngarchSpec& spec);
/// beta0 / (1 - sum beta - sum alpha).
[[nodiscard]] double stationary_mean(const IngarchSpec& spec);
[[nodiscard]] ClassSeries ingarch_simulate(const IngarchSpec& spec);

struct CoherenceSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  Eigen::VectorXd per_replication;
};

/**
 * Total score between two independently simulated series, per replication.
 * Replication r simulates with seeds derive_seed(spec.seed, 1, r) and
 * derive_seed(spec.seed, 2, r); with `shared_stream` both series use the
 * first seed (so X = Y).
 */
[[nodiscard]] CoherenceSummary coherence_benchmark(const IngarchSpec& spec, int n, const WeightScheme& scheme,
                                                   int replications, bool shared_stream = false,
                                                   unsigned threads = 1);

/**
 * Flood-class panel driven by one common factor.
 *
 * A latent AR(1) factor c_t (unit variance, lag-one correlation
 * `persistence`) is shared by all gauges; gauge g sees
 * v = w c_t + sqrt(1 - w^2) e_{g,t}, w = common_weight. The peak
 * non-exceedance probability is Phi(v); values below `absent_below` become
 * class -1, the rest are classified with `boundaries`. An event without any
 * flood keeps its largest gauge at class 0.
 */
struct FloodEnsembleSpec {
  int gauges = 13;
  int events = 314;
  double common_weight = 0.95;
  double persistence = 0.3;
  double absent_below = 0.2;
  std::uint64_t seed = 0;
  FloodClassBoundaries boundaries = FloodClassBoundaries::standard();
};

[[nodiscard]] ClassMatrix simulate_flood_ensemble(const FloodEnsembleSpec& spec);

}  // namespace ordpat
