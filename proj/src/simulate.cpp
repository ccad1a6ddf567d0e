#include "ordpat/simulate.hpp"

#include "ordpat/parallel.hpp"
#include "ordpat/rng.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace ordpat {

void validate(const IngarchSpec& spec) {
  if (!(spec.beta0 > 0.0)) throw std::invalid_argument("INGARCH intercept beta0 must be positive");
  for (const double b : spec.beta)
    if (!(b >= 0.0)) throw std::invalid_argument("INGARCH coefficients must be non-negative");
  for (const double a : spec.alpha)
    if (!(a >= 0.0)) throw std::invalid_argument("INGARCH coefficients must be non-negative");
  const double persistence = std::accumulate(spec.beta.begin(), spec.beta.end(), 0.0) +
                             std::accumulate(spec.alpha.begin(), spec.alpha.end(), 0.0);
  if (!(persistence < 1.0)) throw std::invalid_argument("INGARCH coefficients must sum to less than 1");
  if (spec.length == 0) throw std::invalid_argument("INGARCH length must be positive");
}

double stationary_mean(const IngarchSpec& spec) {
  validate(spec);
  const double persistence = std::accumulate(spec.beta.begin(), spec.beta.end(), 0.0) +
                             std::accumulate(spec.alpha.begin(), spec.alpha.end(), 0.0);
  return spec.beta0 / (1.0 - persistence);
}

ClassSeries ingarch_simulate(const IngarchSpec& spec) {
  const double mu = stationary_mean(spec);
  const std::size_t p = spec.beta.size(), q = spec.alpha.size();
  const std::size_t total = spec.burn_in + spec.length;

  // histories indexed so that z[t + p] is Z_t; pre-sample values sit at the mean
  std::vector<double> z(total + p, mu), nu(total + q, mu);
  std::mt19937_64 rng(spec.seed);
  ClassSeries out;
  out.values.resize(static_cast<Eigen::Index>(spec.length));
  for (std::size_t t = 0; t < total; ++t) {
    double m = spec.beta0;
    for (std::size_t i = 0; i < p; ++i) m += spec.beta[i] * z[t + p - 1 - i];
    for (std::size_t j = 0; j < q; ++j) m += spec.alpha[j] * nu[t + q - 1 - j];
    nu[t + q] = m;
    std::poisson_distribution<int> draw(m);
    const int count = draw(rng);
    z[t + p] = count;
    if (t >= spec.burn_in) out.values(static_cast<Eigen::Index>(t - spec.burn_in)) = count;
  }
  return out;
}

CoherenceSummary coherence_benchmark(const IngarchSpec& spec, int n, const WeightScheme& scheme, int replications,
                                     bool shared_stream, unsigned threads) {
  validate(spec);
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  CoherenceSummary out;
  out.per_replication.resize(replications);
  parallel_for(static_cast<std::size_t>(replications), threads, [&](std::size_t r) {
    IngarchSpec sx = spec, sy = spec;
    sx.seed = derive_seed(spec.seed, 1, r);
    sy.seed = shared_stream ? sx.seed : derive_seed(spec.seed, 2, r);
    const ClassSeries x = ingarch_simulate(sx);
    const ClassSeries y = ingarch_simulate(sy);
    out.per_replication(static_cast<Eigen::Index>(r)) = total_score(x.values, y.values, n, 1, scheme).value;
  });
  out.mean = out.per_replication.mean();
  out.min = out.per_replication.minCoeff();
  out.max = out.per_replication.maxCoeff();
  return out;
}

ClassMatrix simulate_flood_ensemble(const FloodEnsembleSpec& spec) {
  if (spec.gauges < 1 || spec.events < 1) throw std::invalid_argument("ensemble needs gauges and events");
  if (!(spec.common_weight >= 0.0 && spec.common_weight <= 1.0))
    throw std::invalid_argument("common_weight must lie in [0, 1]");
  if (!(std::abs(spec.persistence) < 1.0)) throw std::invalid_argument("persistence must lie in (-1, 1)");
  if (!(spec.absent_below >= 0.0 && spec.absent_below < 0.5))
    throw std::invalid_argument("absent_below must lie in [0, 0.5)");
  validate(spec.boundaries);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double innovation_sd = std::sqrt(1.0 - spec.persistence * spec.persistence);
  const double idio_sd = std::sqrt(1.0 - spec.common_weight * spec.common_weight);

  ClassMatrix m;
  m.classes.resize(spec.events, spec.gauges);
  for (int g = 0; g < spec.gauges; ++g) m.gauges.push_back("G" + std::to_string(g + 1));
  double factor = gauss(rng);
  Eigen::VectorXd latent(spec.gauges);
  for (int e = 0; e < spec.events; ++e) {
    if (e > 0) factor = spec.persistence * factor + innovation_sd * gauss(rng);
    for (int g = 0; g < spec.gauges; ++g) latent(g) = spec.common_weight * factor + idio_sd * gauss(rng);
    for (int g = 0; g < spec.gauges; ++g) {
      const double p = 0.5 * std::erfc(-latent(g) / std::sqrt(2.0));
      m.classes(e, g) = p < spec.absent_below ? kAbsentClass : classify_peak(p, spec.boundaries);
    }
    if (m.classes.row(e).maxCoeff() < 0) {
      Eigen::Index top = 0;
      latent.maxCoeff(&top);
      m.classes(e, top) = 0;
    }
    m.event_ids.push_back(std::to_string(e + 1));
  }
  return m;
}

}  // namespace ordpat
