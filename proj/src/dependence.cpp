#include "ordpat/dependence.hpp"

#include "ordpat/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <unordered_map>

namespace ordpat {

std::vector<Eigen::Index> window_starts(Eigen::Index length, int n, int stride) {
  if (n < 1) throw std::invalid_argument("pattern length must be positive");
  if (stride != 1 && stride != n)
    throw std::invalid_argument("stride must be 1 or the pattern length " + std::to_string(n) + ", got " +
                                std::to_string(stride));
  if (length < n)
    throw std::invalid_argument("series of length " + std::to_string(length) + " is shorter than pattern length " +
                                std::to_string(n));
  std::vector<Eigen::Index> starts;
  starts.reserve(static_cast<std::size_t>((length - n) / stride + 1));
  for (Eigen::Index j = 0; j + n <= length; j += stride) starts.push_back(j);
  return starts;
}

OrdCoefficient ord_coefficient(double p, double q, double r, double s) {
  OrdCoefficient out;
  const auto term = [](double hit, double base, bool& degenerate) {
    if (base >= 1.0) {
      degenerate = true;
      return 0.0;
    }
    return std::max((hit - base) / (1.0 - base), 0.0);
  };
  out.value = term(p, q, out.degenerate_positive) - term(r, s, out.degenerate_negative);
  return out;
}

namespace {

void attach_ord(DependenceEstimates& est) {
  const OrdCoefficient ord = ord_coefficient(est);
  est.ord = ord.value;
  if (ord.degenerate_positive)
    est.warnings.emplace_back("degenerate marginal: comparison value q-hat = 1, positive ord term set to 0");
  if (ord.degenerate_negative)
    est.warnings.emplace_back("degenerate marginal: comparison value s-hat = 1, negative ord term set to 0");
}

template <typename Pattern>
DependenceEstimates estimates_from(std::span<const Pattern> x, std::span<const Pattern> y,
                                   std::span<const Pattern> y_negated, const WeightScheme& scheme) {
  if (x.size() != y.size() || x.size() != y_negated.size())
    throw std::invalid_argument("pattern sequences differ in length");
  if (x.empty()) throw std::invalid_argument("no windows to estimate from");
  DependenceEstimates est;
  est.num_windows = x.size();
  est.p_hat = coincidence_rate(x, y, &est.match_indicators);
  est.q_hat = comparison_value(x, y);
  est.r_hat = coincidence_rate(x, y_negated);
  est.s_hat = comparison_value(x, y_negated);
  est.total_score = mean_score(x, y, scheme, &est.window_scores);
  est.score_comparison = expected_score(x, y, scheme);
  attach_ord(est);
  return est;
}

void check_baseline_scheme(int n, const WeightScheme& scheme) {
  switch (scheme.kind()) {
    case WeightKind::Exact:
      return;
    case WeightKind::ClassicalShort:
    case WeightKind::ClassicalLong:
      if (WeightScheme::classical_for(n).kind() != scheme.kind())
        throw std::invalid_argument("scheme " + scheme.name() + " is not defined for n = " + std::to_string(n));
      return;
    case WeightKind::Custom:
      if (scheme.is_classical()) return;
      break;
    default:
      break;
  }
  throw std::invalid_argument("classical baseline needs a classical weight scheme, got " + scheme.name());
}

Eigen::VectorXd jitter(const Eigen::Ref<const Eigen::VectorXd>& v, std::uint64_t seed) {
  std::vector<double> values(v.data(), v.data() + v.size());
  const double half_gap = detail::smallest_gap(std::span<const double>(values)) / 2.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(0.0, half_gap);
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double e = noise(rng);
    while (e == 0.0) e = noise(rng);
    out(i) = v(i) + e;
  }
  return out;
}

}  // namespace

DependenceEstimates estimates_from_patterns(std::span<const GeneralizedPattern> x,
                                            std::span<const GeneralizedPattern> y,
                                            std::span<const GeneralizedPattern> y_negated,
                                            const WeightScheme& scheme) {
  if (scheme.is_classical())
    throw std::invalid_argument("scheme " + scheme.name() + " is for classical patterns");
  return estimates_from(x, y, y_negated, scheme);
}

DependenceEstimates baseline_dependence(const Eigen::Ref<const Eigen::VectorXd>& x,
                                        const Eigen::Ref<const Eigen::VectorXd>& y, int n, int stride,
                                        const TiePolicy& policy, const WeightScheme& scheme) {
  detail::check_pair(x, y);
  check_baseline_scheme(n, scheme);
  const auto starts = window_starts(x.size(), n, stride);

  Eigen::VectorXd xs = x, ys = y, yn = -y;
  TiePolicy window_policy = policy;
  if (const auto* r = std::get_if<RandomizeTies>(&policy)) {
    xs = jitter(x, derive_seed(r->seed, 1));
    ys = jitter(y, derive_seed(r->seed, 2));
    yn = jitter(-y, derive_seed(r->seed, 3));
    window_policy = FirstAppearance{};  // no ties remain
  }

  std::vector<ClassicalPattern> px, py, pyn;
  for (const Eigen::Index j : starts) {
    const auto a = encode_classical(xs.segment(j, n), window_policy);
    const auto b = encode_classical(ys.segment(j, n), window_policy);
    const auto c = encode_classical(yn.segment(j, n), window_policy);
    if (!a || !b || !c) continue;  // Skip: dropped jointly
    px.push_back(*a);
    py.push_back(*b);
    pyn.push_back(*c);
  }
  if (px.empty()) throw std::invalid_argument("every window contains a tie; nothing left under the skip policy");

  DependenceEstimates est = estimates_from(std::span<const ClassicalPattern>(px), std::span<const ClassicalPattern>(py),
                                           std::span<const ClassicalPattern>(pyn), scheme);
  est.n = n;
  est.stride = stride;
  if (px.size() < starts.size())
    est.warnings.push_back("skip policy dropped " + std::to_string(starts.size() - px.size()) + " of " +
                           std::to_string(starts.size()) + " windows");
  return est;
}

DependenceEstimates baseline_dependence(const ClassSeries& x, const ClassSeries& y, int n, int stride,
                                        const TiePolicy& policy, const WeightScheme& scheme) {
  return baseline_dependence(x.values.cast<double>(), y.values.cast<double>(), n, stride, policy, scheme);
}

namespace {

// Window patterns mapped to dense ids so bootstrap replicates only count integers.
struct IdSequences {
  std::vector<int> x, y, yn;
  std::size_t distinct = 0;
};

IdSequences to_ids(const std::vector<GeneralizedPattern>& x, const std::vector<GeneralizedPattern>& y,
                   const std::vector<GeneralizedPattern>& yn) {
  std::unordered_map<GeneralizedPattern, int, PatternHash> ids;
  const auto id_of = [&](const GeneralizedPattern& t) {
    const auto [it, inserted] = ids.emplace(t, static_cast<int>(ids.size()));
    return it->second;
  };
  IdSequences out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.x.push_back(id_of(x[i]));
    out.y.push_back(id_of(y[i]));
    out.yn.push_back(id_of(yn[i]));
  }
  out.distinct = ids.size();
  return out;
}

VarianceEstimate bootstrap_estimate(double point, const Eigen::VectorXd& replicates, std::size_t m,
                                    std::size_t block, double level, Bounds clip) {
  VarianceEstimate v;
  v.point = point;
  v.method = "block-bootstrap";
  v.bandwidth = static_cast<double>(block);
  v.level = level;
  const double mean = replicates.mean();
  const double var = (replicates.array() - mean).square().sum() / static_cast<double>(replicates.size() - 1);
  v.sigma2_hat = var * static_cast<double>(m);
  const Interval ci = confidence_interval(point, v.sigma2_hat, m, level, clip);
  v.ci_low = ci.low;
  v.ci_high = ci.high;
  return v;
}

}  // namespace

DependenceReport analyze_pair(const ClassSeries& x, const ClassSeries& y, int n, int stride,
                              const WeightScheme& scheme, const InferenceOptions& options) {
  detail::check_pair(x.values, y.values);
  const auto px = window_patterns(x.values, n, stride);
  const auto py = window_patterns(y.values, n, stride);
  const Eigen::VectorXi negated = -y.values;
  const auto pyn = window_patterns(negated, n, stride);

  DependenceReport report;
  report.estimates = estimates_from_patterns(px, py, pyn, scheme);
  report.estimates.n = n;
  report.estimates.stride = stride;
  const DependenceEstimates& est = report.estimates;
  report.warnings = est.warnings;
  const std::size_t m = est.num_windows;

  if (m < 2) {
    report.warnings.emplace_back("fewer than 2 windows: intervals are degenerate");
    const auto point_only = [&](double v) {
      VarianceEstimate e;
      e.point = v;
      e.ci_low = e.ci_high = v;
      e.level = options.level;
      e.method = "none";
      return e;
    };
    report.p = point_only(est.p_hat);
    report.total_score = point_only(est.total_score);
    report.q = point_only(est.q_hat);
    report.ord = point_only(est.ord);
    return report;
  }

  report.p = kernel_interval(est.match_indicators, options.level, options.kernel, options.bandwidth);
  report.total_score = kernel_interval(est.window_scores, options.level, options.kernel, options.bandwidth);
  if (report.p.truncated) report.warnings.emplace_back("negative long-run variance for p-hat truncated to 0");
  if (report.total_score.truncated)
    report.warnings.emplace_back("negative long-run variance for the total score truncated to 0");

  if (options.bootstrap_replicates <= 0) {
    report.q = {est.q_hat, 0.0, "none", 0.0, est.q_hat, est.q_hat, options.level, false};
    report.ord = {est.ord, 0.0, "none", 0.0, est.ord, est.ord, options.level, false};
    return report;
  }

  const std::size_t block =
      options.bootstrap_block ? std::min(options.bootstrap_block, m) : static_cast<std::size_t>(default_bandwidth(m));
  const IdSequences ids = to_ids(px, py, pyn);
  const auto statistic = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> fx(ids.distinct, 0.0), fy(ids.distinct, 0.0), fyn(ids.distinct, 0.0);
    double hits_p = 0.0, hits_r = 0.0;
    for (const std::size_t i : idx) {
      fx[static_cast<std::size_t>(ids.x[i])] += 1.0;
      fy[static_cast<std::size_t>(ids.y[i])] += 1.0;
      fyn[static_cast<std::size_t>(ids.yn[i])] += 1.0;
      hits_p += ids.x[i] == ids.y[i];
      hits_r += ids.x[i] == ids.yn[i];
    }
    const double total = static_cast<double>(idx.size());
    double q = 0.0, s = 0.0;
    for (std::size_t k = 0; k < ids.distinct; ++k) {
      q += fx[k] * fy[k];
      s += fx[k] * fyn[k];
    }
    q /= total * total;
    s /= total * total;
    Eigen::VectorXd out(2);
    out << q, ord_coefficient(hits_p / total, q, hits_r / total, s).value;
    return out;
  };
  const Eigen::MatrixXd reps =
      moving_block_bootstrap(m, block, options.bootstrap_replicates, options.seed, statistic);
  report.q = bootstrap_estimate(est.q_hat, reps.col(0), m, block, options.level, kProbabilityBounds);
  report.ord = bootstrap_estimate(est.ord, reps.col(1), m, block, options.level, Bounds{-1.0, 1.0});
  return report;
}

}  // namespace ordpat
