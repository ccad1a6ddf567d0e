#include "ordpat/analysis.hpp"

#include "ordpat/parallel.hpp"
#include "ordpat/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace ordpat {

namespace {

// Fixed-format numbers so repeated runs are byte-identical.
std::string fmt(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  std::string s(buf);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) s.erase(0, s[0] == '-' ? 1 : 0);
  return s;
}

std::vector<Eigen::Index> pairwise_columns(const AnalysisConfig& config, const ClassMatrix& matrix) {
  auto cols = resolve_gauges(matrix, config.gauges);
  if (cols.size() < 2) throw std::invalid_argument("pairwise analysis needs at least 2 gauges");
  return cols;
}

}  // namespace

void validate(const AnalysisConfig& config) {
  if (config.n < 1 || config.n > kMaxEnumerationLength)
    throw std::invalid_argument("pattern length n must lie in [1, " + std::to_string(kMaxEnumerationLength) + "]");
  if (config.stride != 1 && config.stride != config.n)
    throw std::invalid_argument("stride must be 1 or n");
  (void)WeightScheme::from_name(config.scheme, config.n);
  (void)parse_tie_policy(config.tie_policy, config.seed);
  if (!(config.level > 0.0 && config.level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  if (config.bandwidth != 0.0 && !(config.bandwidth >= 1.0)) throw std::invalid_argument("bandwidth must be >= 1");
  if (config.bootstrap_replicates == 1 || config.bootstrap_replicates < 0)
    throw std::invalid_argument("bootstrap replicates must be 0 (off) or at least 2");
}

PairwiseResult run_pairwise(const AnalysisConfig& config, const ClassMatrix& matrix) {
  validate(config);
  const WeightScheme scheme = WeightScheme::from_name(config.scheme, config.n);
  if (scheme.is_classical()) throw std::invalid_argument("pairwise analysis uses generalized schemes");
  const auto cols = pairwise_columns(config, matrix);
  const auto d = static_cast<Eigen::Index>(cols.size());

  PairwiseResult out;
  for (const auto c : cols) out.gauges.push_back(matrix.gauges[static_cast<std::size_t>(c)]);
  out.total_score = out.score_comparison = out.p = out.q = out.ord = Eigen::MatrixXd::Zero(d, d);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> jobs;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = a; b < d; ++b) jobs.emplace_back(a, b);

  std::vector<DependenceReport> reports(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t k) {
    const auto [a, b] = jobs[k];
    InferenceOptions opt;
    opt.level = config.level;
    opt.kernel = config.kernel;
    opt.bandwidth = config.bandwidth;
    opt.bootstrap_block = config.bootstrap_block;
    opt.bootstrap_replicates = a == b ? 0 : config.bootstrap_replicates;
    opt.seed = derive_seed(config.seed, 100, k);
    try {
      reports[k] = analyze_pair(matrix.series(cols[static_cast<std::size_t>(a)]),
                                matrix.series(cols[static_cast<std::size_t>(b)]), config.n, config.stride, scheme, opt);
    } catch (const std::exception& e) {
      throw std::invalid_argument("pair (" + out.gauges[static_cast<std::size_t>(a)] + ", " +
                                  out.gauges[static_cast<std::size_t>(b)] + "): " + e.what());
    }
  });

  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto [a, b] = jobs[k];
    const DependenceEstimates& est = reports[k].estimates;
    for (const auto& [i, j] : {std::pair{a, b}, std::pair{b, a}}) {
      out.total_score(i, j) = est.total_score;
      out.score_comparison(i, j) = est.score_comparison;
      out.p(i, j) = est.p_hat;
      out.q(i, j) = est.q_hat;
      out.ord(i, j) = est.ord;
    }
    if (a == b) continue;
    for (const auto& w : reports[k].warnings)
      out.warnings.push_back(out.gauges[static_cast<std::size_t>(a)] + "/" + out.gauges[static_cast<std::size_t>(b)] +
                             ": " + w);
    out.pairs.push_back({out.gauges[static_cast<std::size_t>(a)], out.gauges[static_cast<std::size_t>(b)],
                         std::move(reports[k])});
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Eigen::MatrixXd& values,
                      double scale, int precision) {
  out << "gauge";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << fmt(values(i, j) * scale, precision);
    out << '\n';
  }
}

void write_pairwise_long(std::ostream& out, const PairwiseResult& result, const std::string& reference) {
  out << "gauge_a,gauge_b,n,stride,windows,level,"
         "p_hat,p_low,p_high,q_hat,q_low,q_high,r_hat,s_hat,ord,ord_low,ord_high,"
         "total_score,score_low,score_high,score_comparison,p_sigma2,score_sigma2\n";
  for (const auto& rec : result.pairs) {
    if (!reference.empty() && rec.first != reference && rec.second != reference) continue;
    const auto& r = rec.report;
    const auto& e = r.estimates;
    out << rec.first << ',' << rec.second << ',' << e.n << ',' << e.stride << ',' << e.num_windows << ','
        << fmt(r.p.level, 3) << ',' << fmt(e.p_hat, 6) << ',' << fmt(r.p.ci_low, 6) << ',' << fmt(r.p.ci_high, 6) << ','
        << fmt(e.q_hat, 6) << ',' << fmt(r.q.ci_low, 6) << ',' << fmt(r.q.ci_high, 6) << ',' << fmt(e.r_hat, 6) << ','
        << fmt(e.s_hat, 6) << ',' << fmt(e.ord, 6) << ',' << fmt(r.ord.ci_low, 6) << ',' << fmt(r.ord.ci_high, 6)
        << ',' << fmt(e.total_score, 6) << ',' << fmt(r.total_score.ci_low, 6) << ','
        << fmt(r.total_score.ci_high, 6) << ',' << fmt(e.score_comparison, 6) << ',' << fmt(r.p.sigma2_hat, 6) << ','
        << fmt(r.total_score.sigma2_hat, 6) << '\n';
  }
}

SpatialReport run_spatial(const AnalysisConfig& config, const ClassMatrix& matrix, bool include_unobserved) {
  const auto patterns = spatial_encode(matrix, config.gauges);
  if (patterns.empty()) throw std::invalid_argument("class matrix has no events");
  const FrequencyTable observed = pattern_frequencies(patterns, include_unobserved);
  BaselineOptions opt;
  opt.seed = derive_seed(config.seed, 200);
  const BaselineResult baseline = baseline_frequencies(matrix, config.gauges, opt);
  SpatialReport report = spatial_significance(observed, baseline.table, patterns.size());
  report.baseline_exact = baseline.exact;
  for (const auto c : resolve_gauges(matrix, config.gauges)) report.gauges.push_back(matrix.gauges[static_cast<std::size_t>(c)]);
  return report;
}

void write_spatial_table(std::ostream& out, const SpatialReport& report) {
  out << "# gauges: ";
  for (std::size_t i = 0; i < report.gauges.size(); ++i) out << (i ? "," : "") << report.gauges[i];
  out << "\n# events: " << report.events << ", alpha: " << fmt(report.alpha, 3)
      << " (Bonferroni over " << report.records.size() << " patterns, |z| > " << fmt(report.critical_z, 3) << ")\n";
  out << "pattern,count,observed_pct,baseline_pct,z,p_value,test,flag\n";
  for (const auto& r : report.records) {
    std::string pattern = r.pattern.to_string();
    std::replace(pattern.begin(), pattern.end(), ',', ' ');
    const char* flag = r.impossible ? "impossible-under-baseline" : (r.significant ? "significant" : "");
    out << pattern << ',' << r.count << ',' << fmt(100.0 * r.observed, 1) << ',' << fmt(100.0 * r.baseline, 1) << ','
        << fmt(r.z, 2) << ',' << fmt(r.p_value, 6) << ',' << (r.exact_test ? "binomial" : "z") << ',' << flag
        << '\n';
  }
}

namespace {

struct ApproachScores {
  std::vector<double> by_approach[3];
};

void score_pair(const Eigen::VectorXi& x, const Eigen::VectorXi& y, int n, std::uint64_t seed, double out[3]) {
  out[0] = total_score(x, y, n, 1, WeightScheme::generalized_for(n)).value;
  const WeightScheme classical = WeightScheme::classical_for(n);
  out[1] = baseline_dependence(ClassSeries{x, {}}, ClassSeries{y, {}}, n, 1, RandomizeTies{seed}, classical).total_score;
  out[2] = baseline_dependence(ClassSeries{x, {}}, ClassSeries{y, {}}, n, 1, FirstAppearance{}, classical).total_score;
}

BenchmarkTable summarize(const std::map<int, std::vector<std::array<double, 3>>>& scores) {
  BenchmarkTable table;
  for (std::size_t a = 0; a < kBenchmarkApproaches.size(); ++a) {
    for (const auto& [n, rows] : scores) {
      BenchmarkRow row;
      row.approach = kBenchmarkApproaches[a];
      row.n = n;
      row.samples = rows.size();
      row.min = std::numeric_limits<double>::infinity();
      row.max = -std::numeric_limits<double>::infinity();
      for (const auto& r : rows) {
        row.mean += r[a];
        row.min = std::min(row.min, r[a]);
        row.max = std::max(row.max, r[a]);
      }
      row.mean /= static_cast<double>(rows.size());
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace

BenchmarkTable run_benchmark(const AnalysisConfig& config, const ClassMatrix& matrix) {
  const auto cols = pairwise_columns(config, matrix);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b) pairs.emplace_back(a, b);

  std::map<int, std::vector<std::array<double, 3>>> scores;
  for (const int n : {4, 6}) {
    auto& rows = scores[n];
    rows.resize(pairs.size());
    parallel_for(pairs.size(), config.threads, [&](std::size_t k) {
      const auto [a, b] = pairs[k];
      score_pair(matrix.classes.col(cols[a]), matrix.classes.col(cols[b]), n,
                 derive_seed(config.seed, 300 + static_cast<std::uint64_t>(n), k), rows[k].data());
    });
  }
  return summarize(scores);
}

BenchmarkTable run_benchmark(const AnalysisConfig& config, const IngarchSpec& spec, int replications) {
  validate(spec);
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  std::map<int, std::vector<std::array<double, 3>>> scores;
  for (const int n : {4, 6}) {
    auto& rows = scores[n];
    rows.resize(static_cast<std::size_t>(replications));
    parallel_for(rows.size(), config.threads, [&](std::size_t r) {
      IngarchSpec sx = spec, sy = spec;
      sx.seed = derive_seed(spec.seed, 1, r);
      sy.seed = derive_seed(spec.seed, 2, r);
      score_pair(ingarch_simulate(sx).values, ingarch_simulate(sy).values, n,
                 derive_seed(config.seed, 300 + static_cast<std::uint64_t>(n), r), rows[r].data());
    });
  }
  return summarize(scores);
}

void write_benchmark_table(std::ostream& out, const BenchmarkTable& table) {
  std::vector<int> lengths;
  for (const auto& r : table.rows)
    if (std::find(lengths.begin(), lengths.end(), r.n) == lengths.end()) lengths.push_back(r.n);
  out << "approach";
  for (const int n : lengths) out << ",n" << n << "_mean,n" << n << "_min,n" << n << "_max";
  out << '\n';
  for (const auto& approach : kBenchmarkApproaches) {
    out << approach;
    for (const int n : lengths)
      for (const auto& r : table.rows)
        if (r.approach == approach && r.n == n)
          out << ',' << fmt(100.0 * r.mean, 1) << ',' << fmt(100.0 * r.min, 1) << ',' << fmt(100.0 * r.max, 1);
    out << '\n';
  }
}

void write_coherence_table(std::ostream& out, const std::vector<CoherenceRow>& rows) {
  out << "series,mean,min,max\n";
  for (const auto& r : rows)
    out << r.label << ',' << fmt(100.0 * r.summary.mean, 1) << ',' << fmt(100.0 * r.summary.min, 1) << ','
        << fmt(100.0 * r.summary.max, 1) << '\n';
}

}  // namespace ordpat
