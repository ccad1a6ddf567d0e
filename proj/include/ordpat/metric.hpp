#pragma once

#include "ordpat/patterns.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace ordpat {

/// Plain L1 distance; throws std::invalid_argument on length mismatch.
[[nodiscard]] int l1_distance(const GeneralizedPattern& t, const GeneralizedPattern& u);
[[nodiscard]] int l1_distance(const ClassicalPattern& a, const ClassicalPattern& b);

/// L1 distance minimized over level shifts t + k*e_n, k in [-n, n].
[[nodiscard]] int df_distance(const GeneralizedPattern& t, const GeneralizedPattern& u);

enum class WeightKind { GeneralizedShort, GeneralizedLong, ClassicalShort, ClassicalLong, Exact, Custom };

/**
 * Anti-monotone map from pattern distances to scores.
 *
 * weight(0) is 1, weights never increase with distance and every distance
 * past the table maps to 0. The Classical* kinds are meant for plain L1 on
 * permutations, whose distances are always even.
 */
class WeightScheme {
 public:
  static WeightScheme generalized_short();  // {0:1, 1:0.5}
  static WeightScheme generalized_long();   // {0:1, 1:0.75, 2:0.5, 3:0.25}
  static WeightScheme classical_short();    // {0:1, 2:0.5}
  static WeightScheme classical_long();     // {0:1, 2:0.75, 4:0.5, 6:0.25}
  static WeightScheme exact();              // {0:1}
  /// weights[d] is the score at distance d; validated.
  static WeightScheme custom(std::vector<double> weights, bool classical = false);

  /// Generalized scheme for pattern length n (short below 6, long from 6 on).
  static WeightScheme generalized_for(int n);
  /// Classical baseline scheme; only n = 4 and n = 6 are defined.
  static WeightScheme classical_for(int n);
  /// Names: generalized-short, generalized-long, classical-short, classical-long, exact, auto.
  /// "auto" resolves to generalized_for(n).
  static WeightScheme from_name(const std::string& name, int n);

  [[nodiscard]] WeightKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string name() const;
  [[nodiscard]] bool is_classical() const noexcept { return classical_; }
  [[nodiscard]] const std::vector<double>& table() const noexcept { return weights_; }

  [[nodiscard]] double operator()(int distance) const noexcept {
    if (distance < 0 || distance >= static_cast<int>(weights_.size())) return 0.0;
    return weights_[static_cast<std::size_t>(distance)];
  }

 private:
  WeightScheme(WeightKind kind, std::vector<double> weights, bool classical)
      : kind_(kind), weights_(std::move(weights)), classical_(classical) {}

  WeightKind kind_ = WeightKind::Exact;
  std::vector<double> weights_;
  bool classical_ = false;
};

[[nodiscard]] inline double weight(const WeightScheme& scheme, int distance) { return scheme(distance); }

/// w(d_f(t, u)).
[[nodiscard]] double score(const GeneralizedPattern& t, const GeneralizedPattern& u, const WeightScheme& scheme);
/// w(L1(a, b)) for the classical baselines.
[[nodiscard]] double score(const ClassicalPattern& a, const ClassicalPattern& b, const WeightScheme& scheme);

/// Score matrix S(i, j) = s(rows[i], cols[j]).
template <typename Pattern>
Eigen::MatrixXd score_matrix(std::span<const Pattern> rows, std::span<const Pattern> cols,
                             const WeightScheme& scheme) {
  Eigen::MatrixXd s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = score(rows[i], cols[j], scheme);
  return s;
}

}  // namespace ordpat
