#include "ordpat/spatial.hpp"

#include "ordpat/variance.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ordpat {

Eigen::Index ClassMatrix::column(const std::string& gauge) const {
  const auto it = std::find(gauges.begin(), gauges.end(), gauge);
  if (it == gauges.end()) throw std::invalid_argument("unknown gauge '" + gauge + "'");
  return static_cast<Eigen::Index>(it - gauges.begin());
}

ClassSeries ClassMatrix::series(Eigen::Index col) const {
  if (col < 0 || col >= classes.cols()) throw std::out_of_range("gauge column out of range");
  return ClassSeries{classes.col(col), gauges[static_cast<std::size_t>(col)]};
}

ClassSeries ClassMatrix::series(const std::string& gauge) const { return series(column(gauge)); }

void validate(const ClassMatrix& matrix, bool flood_classes) {
  if (static_cast<Eigen::Index>(matrix.gauges.size()) != matrix.classes.cols())
    throw std::invalid_argument("gauge label count does not match the number of columns");
  if (!matrix.event_ids.empty() && static_cast<Eigen::Index>(matrix.event_ids.size()) != matrix.classes.rows())
    throw std::invalid_argument("event id count does not match the number of rows");
  std::set<std::string> seen;
  for (const auto& g : matrix.gauges) {
    if (g.empty()) throw std::invalid_argument("empty gauge label");
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate gauge label '" + g + "'");
  }
  for (Eigen::Index r = 0; r < matrix.classes.rows(); ++r) {
    if (matrix.classes.row(r).maxCoeff() < 0)
      throw std::invalid_argument("event " + std::to_string(r + 1) + " has no flood at any gauge");
    if (flood_classes && (matrix.classes.row(r).minCoeff() < -1 || matrix.classes.row(r).maxCoeff() > 4))
      throw std::invalid_argument("event " + std::to_string(r + 1) + " has a class outside {-1, ..., 4}");
  }
}

std::vector<Eigen::Index> resolve_gauges(const ClassMatrix& matrix, const std::vector<std::string>& subset) {
  std::vector<Eigen::Index> cols;
  if (subset.empty()) {
    for (Eigen::Index c = 0; c < matrix.classes.cols(); ++c) cols.push_back(c);
  } else {
    for (const auto& g : subset) cols.push_back(matrix.column(g));
  }
  if (cols.empty()) throw std::invalid_argument("empty gauge subset");
  return cols;
}

namespace {

std::vector<Eigen::Index> spatial_columns(const ClassMatrix& matrix, const std::vector<std::string>& subset) {
  auto cols = resolve_gauges(matrix, subset);
  if (static_cast<int>(cols.size()) > kMaxSpatialGauges)
    throw std::invalid_argument("spatial analysis supports at most " + std::to_string(kMaxSpatialGauges) +
                                " gauges, got " + std::to_string(cols.size()));
  return cols;
}

}  // namespace

std::vector<GeneralizedPattern> spatial_encode(const ClassMatrix& matrix, const std::vector<std::string>& subset) {
  const auto cols = spatial_columns(matrix, subset);
  std::vector<GeneralizedPattern> out;
  out.reserve(static_cast<std::size_t>(matrix.events()));
  std::vector<int> row(cols.size());
  for (Eigen::Index e = 0; e < matrix.events(); ++e) {
    for (std::size_t j = 0; j < cols.size(); ++j) row[j] = matrix.classes(e, cols[j]);
    out.push_back(encode_generalized(std::span<const int>(row)));
  }
  return out;
}

double FrequencyTable::sum() const {
  double s = 0.0;
  for (const auto& [t, f] : frequency) s += f;
  return s;
}

FrequencyTable pattern_frequencies(const std::vector<GeneralizedPattern>& patterns, bool include_unobserved) {
  if (patterns.empty()) throw std::invalid_argument("no patterns to tabulate");
  FrequencyTable table;
  table.length = patterns.front().size();
  table.total = patterns.size();
  for (const auto& t : patterns) {
    if (t.size() != table.length) throw std::invalid_argument("patterns of different lengths");
    table.frequency[t] += 1.0;
  }
  for (auto& [t, f] : table.frequency) f /= static_cast<double>(patterns.size());
  if (include_unobserved) {
    for (const auto& t : enumerate_patterns(static_cast<int>(table.length))) table.frequency.try_emplace(t, 0.0);
  }
  return table;
}

BaselineResult baseline_frequencies(const ClassMatrix& matrix, const std::vector<std::string>& subset,
                                    const BaselineOptions& options) {
  const auto cols = spatial_columns(matrix, subset);
  if (matrix.events() == 0) throw std::invalid_argument("class matrix has no events");
  const std::size_t d = cols.size();

  // marginal class distribution of every selected gauge
  std::vector<std::vector<int>> support(d);
  std::vector<std::vector<double>> prob(d);
  double product = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    std::map<int, double> counts;
    for (Eigen::Index e = 0; e < matrix.events(); ++e) counts[matrix.classes(e, cols[j])] += 1.0;
    for (const auto& [c, k] : counts) {
      support[j].push_back(c);
      prob[j].push_back(k / static_cast<double>(matrix.events()));
    }
    product *= static_cast<double>(support[j].size());
  }

  BaselineResult result;
  result.table.length = d;
  std::unordered_map<GeneralizedPattern, double, PatternHash> acc;
  std::vector<int> row(d);

  if (product <= options.exact_limit) {
    std::vector<std::size_t> odo(d, 0);
    while (true) {
      double p = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = support[j][odo[j]];
        p *= prob[j][odo[j]];
      }
      acc[encode_generalized(std::span<const int>(row))] += p;
      std::size_t j = 0;
      while (j < d && ++odo[j] == support[j].size()) odo[j++] = 0;
      if (j == d) break;
    }
  } else {
    result.exact = false;
    std::mt19937_64 rng(options.seed);
    std::vector<std::discrete_distribution<std::size_t>> draw;
    for (std::size_t j = 0; j < d; ++j) draw.emplace_back(prob[j].begin(), prob[j].end());
    const double unit = 1.0 / static_cast<double>(options.monte_carlo_draws);
    for (std::size_t k = 0; k < options.monte_carlo_draws; ++k) {
      for (std::size_t j = 0; j < d; ++j) row[j] = support[j][draw[j](rng)];
      acc[encode_generalized(std::span<const int>(row))] += unit;
    }
  }
  for (auto& [t, p] : acc) result.table.frequency.emplace(t, p);
  return result;
}

double spatial_z(double observed, double baseline, std::size_t events) {
  const double var = baseline * (1.0 - baseline);
  const double diff = observed - baseline;
  if (var <= 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return std::sqrt(static_cast<double>(events)) * diff / std::sqrt(var);
}

double binomial_two_sided(std::size_t count, std::size_t events, double p) {
  if (count > events) throw std::invalid_argument("count exceeds the number of events");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  const auto x = static_cast<double>(count);
  const auto k = static_cast<double>(events);
  if (p == 0.0) return count == 0 ? 1.0 : 0.0;
  if (p == 1.0) return count == events ? 1.0 : 0.0;
  const boost::math::binomial_distribution<double> law(k, p);
  const double lower = boost::math::cdf(law, x);
  const double upper = count == 0 ? 1.0 : boost::math::cdf(boost::math::complement(law, x - 1.0));
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

SpatialReport spatial_significance(const FrequencyTable& observed, const FrequencyTable& baseline, std::size_t events,
                                   double alpha) {
  if (observed.length != baseline.length)
    throw std::invalid_argument("observed and baseline tables index patterns of different lengths");
  if (events == 0) throw std::invalid_argument("number of events must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

  SpatialReport report;
  report.events = events;
  report.alpha = alpha;
  if (events < 30) report.warnings.emplace_back("fewer than 30 events: normal approximation is unreliable");
  const std::size_t m = std::max<std::size_t>(observed.frequency.size(), 1);
  report.critical_z = normal_quantile(1.0 - alpha / (2.0 * static_cast<double>(m)));

  for (const auto& [t, f] : observed.frequency) {
    SpatialRecord rec;
    rec.pattern = t;
    rec.observed = f;
    rec.count = static_cast<std::size_t>(std::llround(f * static_cast<double>(events)));
    rec.baseline = baseline(t);
    rec.z = spatial_z(rec.observed, rec.baseline, events);
    rec.impossible = rec.baseline == 0.0 && rec.observed > 0.0;
    const double expected = static_cast<double>(events) * rec.baseline;
    rec.exact_test = std::min(expected, static_cast<double>(events) - expected) < kMinExpectedCount;
    if (rec.exact_test) {
      rec.p_value = binomial_two_sided(rec.count, events, rec.baseline);
      rec.significant = rec.impossible || rec.p_value < alpha / static_cast<double>(m);
    } else {
      rec.p_value = std::erfc(std::abs(rec.z) / std::sqrt(2.0));
      rec.significant = std::abs(rec.z) > report.critical_z;
    }
    report.records.push_back(std::move(rec));
  }
  std::stable_sort(report.records.begin(), report.records.end(), [](const SpatialRecord& a, const SpatialRecord& b) {
    if (a.observed != b.observed) return a.observed > b.observed;
    return a.pattern < b.pattern;
  });
  return report;
}

double cramers_v(const Eigen::Ref<const Eigen::VectorXi>& a, const Eigen::Ref<const Eigen::VectorXi>& b) {
  if (a.size() != b.size() || a.size() == 0) throw std::invalid_argument("cramers_v: sequences must be equal and non-empty");
  std::map<int, Eigen::Index> ra, cb;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ra.emplace(a(i), 0);
    cb.emplace(b(i), 0);
  }
  Eigen::Index k = 0;
  for (auto& [v, idx] : ra) idx = k++;
  k = 0;
  for (auto& [v, idx] : cb) idx = k++;
  const Eigen::Index r = static_cast<Eigen::Index>(ra.size()), c = static_cast<Eigen::Index>(cb.size());
  if (std::min(r, c) < 2) return 0.0;

  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(r, c);
  for (Eigen::Index i = 0; i < a.size(); ++i) table(ra[a(i)], cb[b(i)]) += 1.0;
  const double n = static_cast<double>(a.size());
  const Eigen::MatrixXd expected = table.rowwise().sum() * table.colwise().sum() / n;
  const double chi2 = ((table - expected).array().square() / expected.array()).sum();
  const double v = std::sqrt(chi2 / (n * static_cast<double>(std::min(r, c) - 1)));
  return std::min(v, 1.0);
}

AutocorrelationResult autocorrelation_check(const ClassSeries& series, int max_lag) {
  const Eigen::Index n = series.size();
  if (max_lag < 1) throw std::invalid_argument("max_lag must be at least 1");
  if (2 * static_cast<Eigen::Index>(max_lag) >= n)
    throw std::invalid_argument("series of length " + std::to_string(n) + " is too short for max_lag " +
                                std::to_string(max_lag));
  AutocorrelationResult out;
  out.v.resize(max_lag);
  for (int k = 1; k <= max_lag; ++k) {
    out.v(k - 1) = cramers_v(series.values.head(n - k), series.values.tail(n - k));
  }
  out.mean = out.v.mean();
  return out;
}

}  // namespace ordpat
