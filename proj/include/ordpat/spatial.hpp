#pragma once

#include "ordpat/dependence.hpp"
#include "ordpat/patterns.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ordpat {

inline constexpr int kAbsentClass = -1;
inline constexpr int kMaxSpatialGauges = 8;

/// Events x gauges class matrix; -1 marks "no flood at this gauge".
struct ClassMatrix {
  std::vector<std::string> event_ids;
  std::vector<std::string> gauges;
  Eigen::MatrixXi classes;

  [[nodiscard]] Eigen::Index events() const noexcept { return classes.rows(); }
  [[nodiscard]] Eigen::Index gauge_count() const noexcept { return classes.cols(); }
  /// Column index of a gauge label; throws std::invalid_argument if unknown.
  [[nodiscard]] Eigen::Index column(const std::string& gauge) const;
  [[nodiscard]] ClassSeries series(const std::string& gauge) const;
  [[nodiscard]] ClassSeries series(Eigen::Index column) const;
};

/**
 * Checks shape, labels and rows. With `flood_classes` every value must lie
 * in {-1, ..., 4}; otherwise any integer is accepted. Rows must contain at
 * least one entry >= 0.
 */
void validate(const ClassMatrix& matrix, bool flood_classes = false);

/// Resolves a gauge subset to column indices (all gauges when empty).
[[nodiscard]] std::vector<Eigen::Index> resolve_gauges(const ClassMatrix& matrix,
                                                       const std::vector<std::string>& subset);

/// One generalized pattern per event over the chosen gauges, in subset order.
[[nodiscard]] std::vector<GeneralizedPattern> spatial_encode(const ClassMatrix& matrix,
                                                             const std::vector<std::string>& subset);

struct FrequencyTable {
  std::size_t length = 0;
  std::size_t total = 0;  // number of patterns tabulated (0 for model-based tables)
  std::map<GeneralizedPattern, double> frequency;

  [[nodiscard]] double operator()(const GeneralizedPattern& t) const {
    const auto it = frequency.find(t);
    return it == frequency.end() ? 0.0 : it->second;
  }
  [[nodiscard]] double sum() const;
};

/// Empirical frequencies; with `include_unobserved` every pattern of T_d gets a row.
[[nodiscard]] FrequencyTable pattern_frequencies(const std::vector<GeneralizedPattern>& patterns,
                                                 bool include_unobserved = false);

struct BaselineOptions {
  double exact_limit = 1e7;        // enumerate when the product of supports is at most this
  std::size_t monte_carlo_draws = 1'000'000;
  std::uint64_t seed = 0;
};

struct BaselineResult {
  FrequencyTable table;
  bool exact = true;
};

/**
 * Pattern law when the gauges are independent with their own empirical
 * class distributions. Exact enumeration over the product of observed
 * supports, or a seeded Monte-Carlo estimate when that product is too large.
 */
[[nodiscard]] BaselineResult baseline_frequencies(const ClassMatrix& matrix, const std::vector<std::string>& subset,
                                                  const BaselineOptions& options = {});

struct SpatialRecord {
  GeneralizedPattern pattern;
  std::size_t count = 0;
  double observed = 0.0;
  double baseline = 0.0;
  double z = 0.0;
  double p_value = 1.0;     // two-sided
  bool exact_test = false;  // binomial test used because K P_0 or K (1 - P_0) is below 5
  bool significant = false;
  bool impossible = false;  // observed although the baseline probability is 0
};

struct SpatialReport {
  std::vector<SpatialRecord> records;  // sorted by observed frequency, descending
  std::size_t events = 0;
  std::vector<std::string> gauges;
  double alpha = 0.05;
  double critical_z = 0.0;  // Bonferroni two-sided critical value
  bool baseline_exact = true;
  std::vector<std::string> warnings;
};

/// sqrt(K) (P_obs - P_0) / sqrt(P_0 (1 - P_0)); 0 when P_0 is 0 or 1 and nothing differs.
[[nodiscard]] double spatial_z(double observed, double baseline, std::size_t events);

/// Two-sided exact binomial p-value of `count` successes in `events` trials with success probability p.
[[nodiscard]] double binomial_two_sided(std::size_t count, std::size_t events, double p);

inline constexpr double kMinExpectedCount = 5.0;

/**
 * Per-pattern z statistics for every pattern listed in `observed`, flagged
 * at two-sided level alpha with a Bonferroni correction over those rows.
 * The z test decides where K P_0 and K (1 - P_0) are both at least 5; for
 * rarer patterns the normal approximation fails and the exact binomial
 * test decides instead (z is still reported).
 * Throws std::invalid_argument when the tables have different lengths.
 */
[[nodiscard]] SpatialReport spatial_significance(const FrequencyTable& observed, const FrequencyTable& baseline,
                                                 std::size_t events, double alpha = 0.05);

/// Cramer's V of the contingency table of two equally long categorical sequences.
[[nodiscard]] double cramers_v(const Eigen::Ref<const Eigen::VectorXi>& a, const Eigen::Ref<const Eigen::VectorXi>& b);

struct AutocorrelationResult {
  Eigen::VectorXd v;  // v(k-1) = Cramer's V at lag k
  double mean = 0.0;
};

/// Cramer's V between the series and its lag-k copy for k = 1..max_lag (max_lag < N/2).
[[nodiscard]] AutocorrelationResult autocorrelation_check(const ClassSeries& series, int max_lag);

}  // namespace ordpat
