#pragma once

#include "ordpat/dependence.hpp"
#include "ordpat/simulate.hpp"
#include "ordpat/spatial.hpp"
#include "ordpat/variance.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ordpat {

struct AnalysisConfig {
  int n = 4;
  int stride = 1;
  std::string scheme = "auto";  // see WeightScheme::from_name
  std::string tie_policy = "randomize";
  double level = 0.95;
  Kernel kernel = Kernel::Bartlett;
  double bandwidth = 0.0;  // 0: ceil(M^(1/3))
  std::size_t bootstrap_block = 0;
  int bootstrap_replicates = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> gauges;  // empty: all
  std::string reference;            // optional: long-form output keeps only pairs with this gauge
  unsigned threads = 1;
};

/// Throws std::invalid_argument for unresolvable names or out-of-range values.
void validate(const AnalysisConfig& config);

struct PairRecord {
  std::string first;
  std::string second;
  DependenceReport report;
};

struct PairwiseResult {
  std::vector<std::string> gauges;
  Eigen::MatrixXd total_score;
  Eigen::MatrixXd score_comparison;
  Eigen::MatrixXd p;
  Eigen::MatrixXd q;
  Eigen::MatrixXd ord;
  std::vector<PairRecord> pairs;  // unordered pairs a < b, row-major over the gauge list
  std::vector<std::string> warnings;
};

/// Temporal analysis of every unordered gauge pair; matrices are exactly symmetric.
[[nodiscard]] PairwiseResult run_pairwise(const AnalysisConfig& config, const ClassMatrix& matrix);

/// Symmetric matrix in percent, first row/column are the labels.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Eigen::MatrixXd& values,
                      double scale = 100.0, int precision = 2);
void write_pairwise_long(std::ostream& out, const PairwiseResult& result, const std::string& reference = {});

/// Spatial pattern table for the configured gauge subset (at most 8 gauges).
[[nodiscard]] SpatialReport run_spatial(const AnalysisConfig& config, const ClassMatrix& matrix,
                                        bool include_unobserved = false);
/// Table columns: pattern, count, observed %, baseline %, z, p-value, test used, flag.
void write_spatial_table(std::ostream& out, const SpatialReport& report);

struct BenchmarkRow {
  std::string approach;
  int n = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;
  std::vector<std::string> warnings;
};

inline const std::vector<std::string> kBenchmarkApproaches{"Generalized", "Randomized ties", "FirstAppearance"};

/**
 * Tie-handling comparison over all gauge pairs of a matrix: generalized
 * total score (scheme for n) against classical baselines with randomized
 * ties and first-appearance ties, for n = 4 and n = 6.
 */
[[nodiscard]] BenchmarkTable run_benchmark(const AnalysisConfig& config, const ClassMatrix& matrix);
/// Same rows over INGARCH replications (two independent series each).
[[nodiscard]] BenchmarkTable run_benchmark(const AnalysisConfig& config, const IngarchSpec& spec, int replications);

/// Two-block layout: approach, then mean/min/max for n = 4 and n = 6, in percent.
void write_benchmark_table(std::ostream& out, const BenchmarkTable& table);

struct CoherenceRow {
  std::string label;
  CoherenceSummary summary;
};
/// label, mean, min, max in percent.
void write_coherence_table(std::ostream& out, const std::vector<CoherenceRow>& rows);

}  // namespace ordpat
