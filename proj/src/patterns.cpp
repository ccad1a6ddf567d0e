#include "ordpat/patterns.hpp"

#include <limits>
#include <sstream>

namespace ordpat {

namespace {

template <typename Seq>
std::string join_codes(const Seq& values) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  os << ')';
  return os.str();
}

std::size_t hash_ints(const std::vector<int>& v) noexcept {
  // FNV-1a over the codes.
  std::uint64_t h = 1469598103934665603ULL;
  for (const int c : v) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

// Lexicographic DFS over code vectors. `used` counts occurrences of each code,
// `top` is the largest code used so far; a completed vector is a pattern iff
// every code 1..top occurs.
void enumerate_into(int n, std::vector<int>& prefix, std::vector<int>& used, int top,
                    std::vector<GeneralizedPattern>& out) {
  const int pos = static_cast<int>(prefix.size());
  if (pos == n) {
    out.push_back(GeneralizedPattern::from_codes(prefix));
    return;
  }
  const int remaining = n - pos;
  for (int c = 1; c <= n; ++c) {
    const int new_top = std::max(top, c);
    int missing = 0;
    for (int k = 1; k <= new_top; ++k)
      if (used[static_cast<std::size_t>(k)] == 0 && k != c) ++missing;
    if (missing > remaining - 1) continue;
    prefix.push_back(c);
    ++used[static_cast<std::size_t>(c)];
    enumerate_into(n, prefix, used, new_top, out);
    --used[static_cast<std::size_t>(c)];
    prefix.pop_back();
  }
}

}  // namespace

GeneralizedPattern GeneralizedPattern::from_codes(std::vector<int> codes) {
  if (codes.empty()) throw std::invalid_argument("pattern must have at least one code");
  std::vector<char> seen(codes.size() + 1, 0);
  int top = 0;
  for (const int c : codes) {
    if (c < 1 || c > static_cast<int>(codes.size()))
      throw std::invalid_argument("pattern code out of range: " + join_codes(codes));
    seen[static_cast<std::size_t>(c)] = 1;
    top = std::max(top, c);
  }
  for (int k = 1; k <= top; ++k)
    if (!seen[static_cast<std::size_t>(k)])
      throw std::invalid_argument("pattern codes are not contiguous: " + join_codes(codes));
  return GeneralizedPattern(std::move(codes), unchecked_t{});
}

GeneralizedPattern GeneralizedPattern::unit(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pattern must have at least one code");
  return GeneralizedPattern(std::vector<int>(n, 1), unchecked_t{});
}

int GeneralizedPattern::levels() const noexcept {
  return codes_.empty() ? 0 : *std::max_element(codes_.begin(), codes_.end());
}

std::string GeneralizedPattern::to_string() const { return join_codes(codes_); }

ClassicalPattern ClassicalPattern::from_permutation(std::vector<int> perm) {
  if (perm.empty()) throw std::invalid_argument("permutation must be non-empty");
  std::vector<char> seen(perm.size() + 1, 0);
  for (const int v : perm) {
    if (v < 1 || v > static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation: " + join_codes(perm));
    seen[static_cast<std::size_t>(v)] = 1;
  }
  ClassicalPattern p;
  p.perm_ = std::move(perm);
  return p;
}

std::string ClassicalPattern::to_string() const { return join_codes(perm_); }

std::size_t PatternHash::operator()(const GeneralizedPattern& t) const noexcept {
  return hash_ints(t.codes());
}

std::size_t PatternHash::operator()(const ClassicalPattern& p) const noexcept {
  return hash_ints(p.perm());
}

std::string tie_policy_name(const TiePolicy& policy) {
  if (std::holds_alternative<SkipTies>(policy)) return "skip";
  if (std::holds_alternative<RandomizeTies>(policy)) return "randomize";
  return "first";
}

TiePolicy parse_tie_policy(const std::string& name, std::uint64_t seed) {
  if (name == "skip") return SkipTies{};
  if (name == "randomize" || name == "random") return RandomizeTies{seed};
  if (name == "first" || name == "first-appearance") return FirstAppearance{};
  throw std::invalid_argument("unknown tie policy '" + name + "' (expected skip, randomize or first)");
}

std::uint64_t fubini(int n) {
  if (n < 0) throw std::invalid_argument("fubini: n must be non-negative");
  // a(m) = sum_{k=1..m} C(m,k) a(m-k), a(0) = 1
  std::vector<std::uint64_t> a(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> binom(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // row m of Pascal's triangle
    binom.assign(static_cast<std::size_t>(n) + 1, 0);
    binom[0] = 1;
    for (int k = 1; k <= m; ++k) {
      // C(m,k) = C(m,k-1) * (m-k+1) / k, exact in this order
      std::uint64_t prod = 0;
      if (__builtin_mul_overflow(binom[static_cast<std::size_t>(k - 1)],
                                 static_cast<std::uint64_t>(m - k + 1), &prod))
        throw std::overflow_error("fubini: binomial overflow at n=" + std::to_string(n));
      binom[static_cast<std::size_t>(k)] = prod / static_cast<std::uint64_t>(k);
    }
    std::uint64_t sum = 0;
    for (int k = 1; k <= m; ++k) {
      std::uint64_t term = 0;
      if (__builtin_mul_overflow(binom[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(m - k)], &term) ||
          __builtin_add_overflow(sum, term, &sum))
        throw std::overflow_error("fubini(" + std::to_string(n) + ") exceeds 64 bits");
    }
    a[static_cast<std::size_t>(m)] = sum;
  }
  return a[static_cast<std::size_t>(n)];
}

std::optional<std::size_t> PatternTable::find(const GeneralizedPattern& t) const {
  const auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PatternTable enumerate_patterns(int n) {
  if (n < 1 || n > kMaxEnumerationLength)
    throw std::invalid_argument("enumerate_patterns: n must lie in [1, " +
                                std::to_string(kMaxEnumerationLength) + "], got " + std::to_string(n));
  PatternTable table;
  table.n_ = n;
  table.entries_.reserve(static_cast<std::size_t>(fubini(n)));
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  std::vector<int> used(static_cast<std::size_t>(n) + 1, 0);
  enumerate_into(n, prefix, used, 0, table.entries_);
  table.index_.reserve(table.entries_.size());
  for (std::size_t i = 0; i < table.entries_.size(); ++i) table.index_.emplace(table.entries_[i], i);
  return table;
}

std::size_t pattern_index(const PatternTable& table, const GeneralizedPattern& t) {
  if (static_cast<int>(t.size()) != table.length())
    throw std::invalid_argument("pattern " + t.to_string() + " has length " + std::to_string(t.size()) +
                                ", table has length " + std::to_string(table.length()));
  const auto pos = table.find(t);
  if (!pos) throw std::invalid_argument("malformed pattern " + t.to_string());
  return *pos;
}

}  // namespace ordpat
