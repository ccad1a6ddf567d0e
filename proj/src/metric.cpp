#include "ordpat/metric.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace ordpat {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("pattern length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

int l1_distance(const GeneralizedPattern& t, const GeneralizedPattern& u) {
  require_same_length(t.size(), u.size());
  int d = 0;
  for (std::size_t j = 0; j < t.size(); ++j) d += std::abs(t[j] - u[j]);
  return d;
}

int l1_distance(const ClassicalPattern& a, const ClassicalPattern& b) {
  require_same_length(a.size(), b.size());
  int d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += std::abs(a[j] - b[j]);
  return d;
}

int df_distance(const GeneralizedPattern& t, const GeneralizedPattern& u) {
  require_same_length(t.size(), u.size());
  const int n = static_cast<int>(t.size());
  int best = std::numeric_limits<int>::max();
  for (int k = -n; k <= n; ++k) {
    int d = 0;
    for (std::size_t j = 0; j < t.size(); ++j) d += std::abs(t[j] + k - u[j]);
    best = std::min(best, d);
  }
  return best;
}

WeightScheme WeightScheme::generalized_short() {
  return WeightScheme(WeightKind::GeneralizedShort, {1.0, 0.5}, false);
}

WeightScheme WeightScheme::generalized_long() {
  return WeightScheme(WeightKind::GeneralizedLong, {1.0, 0.75, 0.5, 0.25}, false);
}

WeightScheme WeightScheme::classical_short() {
  return WeightScheme(WeightKind::ClassicalShort, {1.0, 0.0, 0.5}, true);
}

WeightScheme WeightScheme::classical_long() {
  return WeightScheme(WeightKind::ClassicalLong, {1.0, 0.0, 0.75, 0.0, 0.5, 0.0, 0.25}, true);
}

WeightScheme WeightScheme::exact() { return WeightScheme(WeightKind::Exact, {1.0}, false); }

WeightScheme WeightScheme::custom(std::vector<double> weights, bool classical) {
  if (weights.empty() || weights.front() != 1.0)
    throw std::invalid_argument("custom weight scheme must start with weight(0) = 1");
  double last = 1.0;
  for (std::size_t d = 0; d < weights.size(); ++d) {
    const double w = weights[d];
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("custom weights must lie in [0, 1]");
    // classical tables may carry zeros at odd distances, which are never attained
    if (classical && d % 2 == 1) {
      if (w != 0.0) throw std::invalid_argument("classical weights at odd distances must be 0");
      continue;
    }
    if (w > last) throw std::invalid_argument("custom weights must be non-increasing in distance");
    last = w;
  }
  return WeightScheme(WeightKind::Custom, std::move(weights), classical);
}

WeightScheme WeightScheme::generalized_for(int n) {
  if (n < 1) throw std::invalid_argument("pattern length must be positive");
  return n < 6 ? generalized_short() : generalized_long();
}

WeightScheme WeightScheme::classical_for(int n) {
  if (n == 4) return classical_short();
  if (n == 6) return classical_long();
  throw std::invalid_argument("classical baseline weights are only defined for n = 4 and n = 6, got n = " +
                              std::to_string(n));
}

WeightScheme WeightScheme::from_name(const std::string& name, int n) {
  if (name == "auto" || name.empty()) return generalized_for(n);
  if (name == "generalized-short") return generalized_short();
  if (name == "generalized-long") return generalized_long();
  if (name == "classical-short" || name == "classical-long") {
    const WeightScheme s = name == "classical-short" ? classical_short() : classical_long();
    if (s.kind() != classical_for(n).kind())
      throw std::invalid_argument("scheme " + name + " does not match pattern length " + std::to_string(n));
    return s;
  }
  if (name == "exact") return exact();
  throw std::invalid_argument("unknown weight scheme '" + name + "'");
}

std::string WeightScheme::name() const {
  switch (kind_) {
    case WeightKind::GeneralizedShort: return "generalized-short";
    case WeightKind::GeneralizedLong: return "generalized-long";
    case WeightKind::ClassicalShort: return "classical-short";
    case WeightKind::ClassicalLong: return "classical-long";
    case WeightKind::Exact: return "exact";
    case WeightKind::Custom: return "custom";
  }
  return "custom";
}

double score(const GeneralizedPattern& t, const GeneralizedPattern& u, const WeightScheme& scheme) {
  return scheme(df_distance(t, u));
}

double score(const ClassicalPattern& a, const ClassicalPattern& b, const WeightScheme& scheme) {
  return scheme(l1_distance(a, b));
}

}  // namespace ordpat
