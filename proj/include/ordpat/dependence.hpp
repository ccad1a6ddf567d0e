#pragma once

#include "ordpat/metric.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/variance.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ordpat {

/// Integer-valued series (flood classes of one gauge, or counts).
struct ClassSeries {
  Eigen::VectorXi values;
  std::string label;

  [[nodiscard]] Eigen::Index size() const noexcept { return values.size(); }
};

struct WindowEstimate {
  double value = 0.0;
  Eigen::VectorXd per_window;  // indicator or score of each window
};

struct OrdCoefficient {
  double value = 0.0;
  bool degenerate_positive = false;  // q-hat == 1, positive term set to 0
  bool degenerate_negative = false;  // s-hat == 1, negative term set to 0
};

struct DependenceEstimates {
  double p_hat = 0.0;
  double q_hat = 0.0;
  double r_hat = 0.0;
  double s_hat = 0.0;
  double ord = 0.0;
  double total_score = 0.0;
  double score_comparison = 0.0;
  int n = 0;
  int stride = 1;
  std::size_t num_windows = 0;
  Eigen::VectorXd match_indicators;  // 1{Psi(x-window) == Psi(y-window)}
  Eigen::VectorXd window_scores;     // s(Psi(x-window), Psi(y-window))
  std::vector<std::string> warnings;
};

/// Window starts 0, stride, ... <= N - n. Throws on N < n, n < 1, or stride outside {1, n}.
[[nodiscard]] std::vector<Eigen::Index> window_starts(Eigen::Index length, int n, int stride);

template <typename Derived>
std::vector<GeneralizedPattern> window_patterns(const Eigen::DenseBase<Derived>& series, int n, int stride = 1) {
  std::vector<GeneralizedPattern> out;
  const auto starts = window_starts(series.size(), n, stride);
  out.reserve(starts.size());
  for (const Eigen::Index j : starts) out.push_back(encode_generalized(series.derived().segment(j, n)));
  return out;
}

// ---- pattern-sequence estimators --------------------------------------------

template <typename Pattern>
std::map<Pattern, double> empirical_frequencies(std::span<const Pattern> patterns) {
  std::map<Pattern, double> freq;
  if (patterns.empty()) return freq;
  for (const auto& t : patterns) freq[t] += 1.0;
  const double total = static_cast<double>(patterns.size());
  for (auto& [t, f] : freq) f /= total;
  return freq;
}

/// Fraction of positions where a[i] == b[i]; indicators written to `per_window`.
template <typename Pattern>
double coincidence_rate(std::span<const Pattern> a, std::span<const Pattern> b, Eigen::VectorXd* per_window = nullptr) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pattern sequences must be equal and non-empty");
  Eigen::VectorXd ind(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) ind(static_cast<Eigen::Index>(i)) = a[i] == b[i] ? 1.0 : 0.0;
  if (per_window) *per_window = ind;
  return ind.mean();
}

/// sum_t f_a(t) f_b(t).
template <typename Pattern>
double comparison_value(std::span<const Pattern> a, std::span<const Pattern> b) {
  const auto fa = empirical_frequencies(a);
  const auto fb = empirical_frequencies(b);
  double q = 0.0;
  for (const auto& [t, f] : fa) {
    const auto it = fb.find(t);
    if (it != fb.end()) q += f * it->second;
  }
  return q;
}

/// Mean window score (1/M) sum_i s(a[i], b[i]).
template <typename Pattern>
double mean_score(std::span<const Pattern> a, std::span<const Pattern> b, const WeightScheme& scheme,
                  Eigen::VectorXd* per_window = nullptr) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pattern sequences must be equal and non-empty");
  Eigen::VectorXd s(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) s(static_cast<Eigen::Index>(i)) = score(a[i], b[i], scheme);
  if (per_window) *per_window = s;
  return s.mean();
}

/// Expected score under independence: f_a^T S f_b over the observed supports.
template <typename Pattern>
double expected_score(std::span<const Pattern> a, std::span<const Pattern> b, const WeightScheme& scheme) {
  const auto fa = empirical_frequencies(a);
  const auto fb = empirical_frequencies(b);
  std::vector<Pattern> ka, kb;
  Eigen::VectorXd va(static_cast<Eigen::Index>(fa.size())), vb(static_cast<Eigen::Index>(fb.size()));
  for (const auto& [t, f] : fa) {
    va(static_cast<Eigen::Index>(ka.size())) = f;
    ka.push_back(t);
  }
  for (const auto& [t, f] : fb) {
    vb(static_cast<Eigen::Index>(kb.size())) = f;
    kb.push_back(t);
  }
  const Eigen::MatrixXd s = score_matrix(std::span<const Pattern>(ka), std::span<const Pattern>(kb), scheme);
  return va.dot(s * vb);
}

[[nodiscard]] OrdCoefficient ord_coefficient(double p, double q, double r, double s);
[[nodiscard]] inline OrdCoefficient ord_coefficient(const DependenceEstimates& est) {
  return ord_coefficient(est.p_hat, est.q_hat, est.r_hat, est.s_hat);
}

/// All estimators from window pattern sequences of x, y and -y (same grid).
[[nodiscard]] DependenceEstimates estimates_from_patterns(std::span<const GeneralizedPattern> x,
                                                          std::span<const GeneralizedPattern> y,
                                                          std::span<const GeneralizedPattern> y_negated,
                                                          const WeightScheme& scheme);

// ---- series-level estimators ------------------------------------------------

namespace detail {
template <typename DX, typename DY>
void check_pair(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("series length mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
}
}  // namespace detail

template <typename DX, typename DY>
WindowEstimate estimate_p(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n, int stride = 1) {
  detail::check_pair(x, y);
  const auto px = window_patterns(x, n, stride);
  const auto py = window_patterns(y, n, stride);
  WindowEstimate out;
  out.value = coincidence_rate(std::span<const GeneralizedPattern>(px), std::span<const GeneralizedPattern>(py),
                               &out.per_window);
  return out;
}

template <typename DX, typename DY>
double estimate_q(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n, int stride = 1) {
  detail::check_pair(x, y);
  const auto px = window_patterns(x, n, stride);
  const auto py = window_patterns(y, n, stride);
  return comparison_value(std::span<const GeneralizedPattern>(px), std::span<const GeneralizedPattern>(py));
}

/// (r-hat, s-hat): p-hat and q-hat of (x, -y).
template <typename DX, typename DY>
std::pair<double, double> estimate_r_s(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n,
                                       int stride = 1) {
  detail::check_pair(x, y);
  const auto negated = (-y.derived()).eval();
  return {estimate_p(x, negated, n, stride).value, estimate_q(x, negated, n, stride)};
}

template <typename DX, typename DY>
WindowEstimate total_score(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n, int stride,
                           const WeightScheme& scheme) {
  detail::check_pair(x, y);
  const auto px = window_patterns(x, n, stride);
  const auto py = window_patterns(y, n, stride);
  WindowEstimate out;
  out.value = mean_score(std::span<const GeneralizedPattern>(px), std::span<const GeneralizedPattern>(py), scheme,
                         &out.per_window);
  return out;
}

template <typename DX, typename DY>
double score_comparison(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n, int stride,
                        const WeightScheme& scheme) {
  detail::check_pair(x, y);
  const auto px = window_patterns(x, n, stride);
  const auto py = window_patterns(y, n, stride);
  return expected_score(std::span<const GeneralizedPattern>(px), std::span<const GeneralizedPattern>(py), scheme);
}

/// p, q, r, s, ord, total score and comparison value in one pass.
template <typename DX, typename DY>
DependenceEstimates estimate_dependence(const Eigen::DenseBase<DX>& x, const Eigen::DenseBase<DY>& y, int n,
                                        int stride, const WeightScheme& scheme) {
  detail::check_pair(x, y);
  const auto px = window_patterns(x, n, stride);
  const auto py = window_patterns(y, n, stride);
  const auto pyn = window_patterns((-y.derived()).eval(), n, stride);
  DependenceEstimates est = estimates_from_patterns(px, py, pyn, scheme);
  est.n = n;
  est.stride = stride;
  return est;
}

inline DependenceEstimates estimate_dependence(const ClassSeries& x, const ClassSeries& y, int n, int stride,
                                               const WeightScheme& scheme) {
  return estimate_dependence(x.values, y.values, n, stride, scheme);
}

/**
 * Classical-pattern baseline: the same estimators through encode_classical
 * and plain L1 on permutations.
 *
 * Randomize jitters each whole series once (seeds derived from the policy
 * seed; -y gets its own stream). Skip drops every window where either side
 * has a tie, jointly for both series. The scheme must be Exact, a classical
 * scheme matching n, or a classical custom table.
 */
[[nodiscard]] DependenceEstimates baseline_dependence(const ClassSeries& x, const ClassSeries& y, int n, int stride,
                                                      const TiePolicy& policy, const WeightScheme& scheme);
[[nodiscard]] DependenceEstimates baseline_dependence(const Eigen::Ref<const Eigen::VectorXd>& x,
                                                      const Eigen::Ref<const Eigen::VectorXd>& y, int n, int stride,
                                                      const TiePolicy& policy, const WeightScheme& scheme);

// ---- inference --------------------------------------------------------------

struct InferenceOptions {
  double level = 0.95;
  Kernel kernel = Kernel::Bartlett;
  double bandwidth = 0.0;          // 0: ceil(M^(1/3))
  std::size_t bootstrap_block = 0;  // 0: ceil(M^(1/3))
  int bootstrap_replicates = 1000;  // 0 disables the bootstrap intervals
  std::uint64_t seed = 0;
};

/// Point estimates with intervals for one series pair.
struct DependenceReport {
  DependenceEstimates estimates;
  VarianceEstimate p;            // kernel long-run variance
  VarianceEstimate total_score;  // kernel long-run variance of the window scores
  VarianceEstimate q;            // block bootstrap
  VarianceEstimate ord;          // block bootstrap
  std::vector<std::string> warnings;
};

[[nodiscard]] DependenceReport analyze_pair(const ClassSeries& x, const ClassSeries& y, int n, int stride,
                                            const WeightScheme& scheme, const InferenceOptions& options);

}  // namespace ordpat
