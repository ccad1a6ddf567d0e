#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <variant>
#include <vector>

namespace ordpat {

/**
 * Generalized ordinal pattern of a length-n window.
 *
 * Codes are the ranks of each entry among the distinct window values,
 * so ties share a code. The set of codes is always {1, ..., m} for some
 * m <= n. Equivalently, a pattern is an ordered set partition of the
 * window positions.
 */
class GeneralizedPattern {
 public:
  GeneralizedPattern() = default;

  /// Validating constructor; throws std::invalid_argument on malformed codes.
  static GeneralizedPattern from_codes(std::vector<int> codes);
  static GeneralizedPattern from_codes(std::initializer_list<int> codes) {
    return from_codes(std::vector<int>(codes));
  }
  /// Unit pattern (1, ..., 1).
  static GeneralizedPattern unit(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return codes_.size(); }
  [[nodiscard]] const std::vector<int>& codes() const noexcept { return codes_; }
  [[nodiscard]] int operator[](std::size_t i) const { return codes_[i]; }
  /// Number of distinct values in the underlying window.
  [[nodiscard]] int levels() const noexcept;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GeneralizedPattern&, const GeneralizedPattern&) = default;
  friend auto operator<=>(const GeneralizedPattern&, const GeneralizedPattern&) = default;

 private:
  struct unchecked_t {};
  GeneralizedPattern(std::vector<int> codes, unchecked_t) : codes_(std::move(codes)) {}

  std::vector<int> codes_;

  template <typename T>
  friend GeneralizedPattern encode_generalized(std::span<const T> window);
};

/// Descending-order permutation of the window positions (1-based).
class ClassicalPattern {
 public:
  ClassicalPattern() = default;
  static ClassicalPattern from_permutation(std::vector<int> perm);
  static ClassicalPattern from_permutation(std::initializer_list<int> perm) {
    return from_permutation(std::vector<int>(perm));
  }

  [[nodiscard]] std::size_t size() const noexcept { return perm_.size(); }
  [[nodiscard]] const std::vector<int>& perm() const noexcept { return perm_; }
  [[nodiscard]] int operator[](std::size_t i) const { return perm_[i]; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ClassicalPattern&, const ClassicalPattern&) = default;
  friend auto operator<=>(const ClassicalPattern&, const ClassicalPattern&) = default;

 private:
  std::vector<int> perm_;
};

struct PatternHash {
  std::size_t operator()(const GeneralizedPattern& t) const noexcept;
  std::size_t operator()(const ClassicalPattern& p) const noexcept;
};

// Legacy tie handling for classical patterns.
struct SkipTies {};
struct RandomizeTies {
  std::uint64_t seed = 0;
};
struct FirstAppearance {};
using TiePolicy = std::variant<SkipTies, RandomizeTies, FirstAppearance>;

[[nodiscard]] std::string tie_policy_name(const TiePolicy& policy);
/// Accepts "skip", "randomize" and "first" (alias "first-appearance").
[[nodiscard]] TiePolicy parse_tie_policy(const std::string& name, std::uint64_t seed = 0);

namespace detail {

template <typename T>
void check_window(std::span<const T> window) {
  if (window.empty()) throw std::invalid_argument("empty window");
  if constexpr (std::is_floating_point_v<T>) {
    for (const T v : window)
      if (std::isnan(v)) throw std::invalid_argument("window contains an undefined (NaN) value");
  }
}

template <typename Derived>
auto to_vector(const Eigen::DenseBase<Derived>& window) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> out(static_cast<std::size_t>(window.size()));
  for (Eigen::Index i = 0; i < window.size(); ++i) out[static_cast<std::size_t>(i)] = window(i);
  return out;
}

// Descending order of positions, equal values by larger position first.
template <typename T>
ClassicalPattern first_appearance_order(std::span<const T> window) {
  std::vector<int> perm(window.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) + 1;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const T va = window[static_cast<std::size_t>(a - 1)];
    const T vb = window[static_cast<std::size_t>(b - 1)];
    if (va != vb) return va > vb;
    return a > b;
  });
  return ClassicalPattern::from_permutation(std::move(perm));
}

/// Smallest nonzero gap among the values, 1 when all values coincide.
template <typename T>
double smallest_gap(std::span<const T> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d > 0.0 && (gap == 0.0 || d < gap)) gap = d;
  }
  return gap > 0.0 ? gap : 1.0;
}

template <typename T>
bool has_ties(std::span<const T> window) {
  std::vector<T> sorted(window.begin(), window.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace detail

/// Generalized pattern of a window: t^j = k iff x^j is the k-th smallest distinct value.
template <typename T>
GeneralizedPattern encode_generalized(std::span<const T> window) {
  detail::check_window(window);
  std::vector<T> distinct(window.begin(), window.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> codes(window.size());
  for (std::size_t j = 0; j < window.size(); ++j) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), window[j]);
    codes[j] = static_cast<int>(it - distinct.begin()) + 1;
  }
  return GeneralizedPattern(std::move(codes), GeneralizedPattern::unchecked_t{});
}

template <typename T>
GeneralizedPattern encode_generalized(const std::vector<T>& window) {
  return encode_generalized(std::span<const T>(window));
}

template <typename T>
GeneralizedPattern encode_generalized(std::initializer_list<T> window) {
  return encode_generalized(std::span<const T>(window.begin(), window.size()));
}

template <typename Derived>
GeneralizedPattern encode_generalized(const Eigen::DenseBase<Derived>& window) {
  const auto values = detail::to_vector(window);
  return encode_generalized(std::span<const typename Derived::Scalar>(values));
}

/**
 * Classical (permutation) pattern under a legacy tie policy.
 *
 * Skip yields std::nullopt for windows containing a tie. Randomize adds
 * seeded uniform noise on (0, g/2), g the smallest nonzero gap of the window,
 * then orders. FirstAppearance orders equal values by descending position.
 */
template <typename T>
std::optional<ClassicalPattern> encode_classical(std::span<const T> window, const TiePolicy& policy) {
  detail::check_window(window);
  if (std::holds_alternative<SkipTies>(policy)) {
    if (detail::has_ties(window)) return std::nullopt;
    return detail::first_appearance_order(window);
  }
  if (const auto* r = std::get_if<RandomizeTies>(&policy)) {
    const double half_gap = detail::smallest_gap(window) / 2.0;
    std::mt19937_64 rng(r->seed);
    std::uniform_real_distribution<double> noise(0.0, half_gap);
    std::vector<double> jittered(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
      double e = noise(rng);
      while (e == 0.0) e = noise(rng);
      jittered[i] = static_cast<double>(window[i]) + e;
    }
    return detail::first_appearance_order(std::span<const double>(jittered));
  }
  return detail::first_appearance_order(window);
}

template <typename T>
std::optional<ClassicalPattern> encode_classical(const std::vector<T>& window, const TiePolicy& policy) {
  return encode_classical(std::span<const T>(window), policy);
}

template <typename T>
std::optional<ClassicalPattern> encode_classical(std::initializer_list<T> window, const TiePolicy& policy) {
  return encode_classical(std::span<const T>(window.begin(), window.size()), policy);
}

template <typename Derived>
std::optional<ClassicalPattern> encode_classical(const Eigen::DenseBase<Derived>& window,
                                                 const TiePolicy& policy) {
  const auto values = detail::to_vector(window);
  return encode_classical(std::span<const typename Derived::Scalar>(values), policy);
}

/// Ordered Bell number; throws std::overflow_error past 64 bits.
[[nodiscard]] std::uint64_t fubini(int n);

inline constexpr int kMaxEnumerationLength = 8;

/// All generalized patterns of one length in lexicographic order, with a reverse index.
class PatternTable {
 public:
  [[nodiscard]] int length() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const std::vector<GeneralizedPattern>& entries() const noexcept { return entries_; }
  [[nodiscard]] const GeneralizedPattern& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

  /// Position of t, or std::nullopt if t is not a pattern of this length.
  [[nodiscard]] std::optional<std::size_t> find(const GeneralizedPattern& t) const;

 private:
  friend PatternTable enumerate_patterns(int n);
  int n_ = 0;
  std::vector<GeneralizedPattern> entries_;
  std::unordered_map<GeneralizedPattern, std::size_t, PatternHash> index_;
};

/// Enumerates T_n for 1 <= n <= 8.
[[nodiscard]] PatternTable enumerate_patterns(int n);

/// Throws std::invalid_argument for patterns of the wrong length.
[[nodiscard]] std::size_t pattern_index(const PatternTable& table, const GeneralizedPattern& t);

}  // namespace ordpat
