#include "catch_amalgamated.hpp"

#include "ordpat/spatial.hpp"

#include <cmath>
#include <random>

using namespace ordpat;
using GP = GeneralizedPattern;
using Catch::Approx;

namespace {

ClassMatrix make_matrix(std::vector<std::vector<int>> rows) {
  ClassMatrix m;
  const auto d = static_cast<Eigen::Index>(rows.front().size());
  m.classes.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (Eigen::Index g = 0; g < d; ++g) m.gauges.push_back("g" + std::to_string(g + 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.event_ids.push_back(std::to_string(r + 1));
    for (Eigen::Index g = 0; g < d; ++g) m.classes(static_cast<Eigen::Index>(r), g) = rows[r][static_cast<std::size_t>(g)];
  }
  return m;
}

}  // namespace

TEST_CASE("spatial encoding", "[spatial]") {
  const auto m = make_matrix({{2, 2, 2, 2}, {3, 2, 2, 2}, {3, -1, 0, 2}});
  const auto p = spatial_encode(m, {});
  CHECK(p[0] == GP::unit(4));
  CHECK(p[1] == GP::from_codes({2, 1, 1, 1}));
  CHECK(p[2] == GP::from_codes({4, 1, 2, 3}));
  const auto sub = spatial_encode(m, {"g4", "g1"});
  CHECK(sub[2] == GP::from_codes({1, 2}));
  CHECK_THROWS_AS(spatial_encode(m, {"g9"}), std::invalid_argument);

  const auto wide = make_matrix({std::vector<int>(9, 1)});
  CHECK_THROWS_AS(spatial_encode(wide, {}), std::invalid_argument);
}

TEST_CASE("matrix validation", "[spatial]") {
  auto m = make_matrix({{0, 1}, {2, -1}});
  CHECK_NOTHROW(validate(m, true));
  m.classes(1, 0) = 5;
  CHECK_THROWS_AS(validate(m, true), std::invalid_argument);
  CHECK_NOTHROW(validate(m));
  m.classes.row(1).setConstant(-1);
  CHECK_THROWS_AS(validate(m), std::invalid_argument);
  auto dup = make_matrix({{0, 1}});
  dup.gauges[1] = "g1";
  CHECK_THROWS_AS(validate(dup), std::invalid_argument);
}

TEST_CASE("frequency tables", "[spatial]") {
  const auto m = make_matrix({{1, 1, 1}, {2, 2, 2}, {0, 1, 1}, {4, 4, 4}});
  const auto f = pattern_frequencies(spatial_encode(m, {}));
  CHECK(f(GP::unit(3)) == 0.75);
  CHECK(f(GP::from_codes({1, 2, 2})) == 0.25);
  CHECK(f.sum() == Approx(1.0));
  CHECK(f.total == 4);
  const auto all = pattern_frequencies(spatial_encode(m, {}), true);
  CHECK(all.frequency.size() == 13);
}

TEST_CASE("empirical frequencies approach the product law", "[spatial]") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> cls(-1, 4);
  std::vector<std::vector<int>> rows;
  while (rows.size() < 10000) {
    std::vector<int> r{cls(rng), cls(rng), cls(rng)};
    if (*std::max_element(r.begin(), r.end()) < 0) continue;
    rows.push_back(r);
  }
  const auto m = make_matrix(rows);
  const auto f = pattern_frequencies(spatial_encode(m, {}), true);
  // exact law over the 6^3 class vectors, conditioned on at least one flood
  std::map<GP, double> exact;
  double mass = 0.0;
  for (int a = -1; a <= 4; ++a)
    for (int b = -1; b <= 4; ++b)
      for (int c = -1; c <= 4; ++c) {
        if (a < 0 && b < 0 && c < 0) continue;
        exact[encode_generalized({a, b, c})] += 1.0;
        mass += 1.0;
      }
  for (const auto& [t, p] : exact) CHECK(std::abs(f(t) - p / mass) < 0.02);
}

TEST_CASE("independence baseline", "[spatial]") {
  const auto constant = make_matrix({{2, 2}, {2, 2}, {2, 2}});
  CHECK(baseline_frequencies(constant, {}).table(GP::unit(2)) == 1.0);

  const auto coin = make_matrix({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto b = baseline_frequencies(coin, {});
  CHECK(b.exact);
  CHECK(b.table(GP::unit(2)) == Approx(0.5));
  CHECK(b.table(GP::from_codes({1, 2})) == Approx(0.25));
  CHECK(b.table(GP::from_codes({2, 1})) == Approx(0.25));

  std::mt19937_64 rng(9);
  std::discrete_distribution<int> flood({0.1, 0.45, 0.27, 0.12, 0.03, 0.03});
  std::vector<std::vector<int>> rows;
  for (int k = 0; k < 314; ++k) {
    std::vector<int> r(4);
    for (auto& v : r) v = flood(rng) - 1;
    r[0] = std::max(r[0], 0);
    rows.push_back(r);
  }
  const auto m = make_matrix(rows);
  const auto exact = baseline_frequencies(m, {});
  CHECK(exact.table.sum() == Approx(1.0));
  BaselineOptions mc;
  mc.exact_limit = 1.0;
  mc.monte_carlo_draws = 200000;
  mc.seed = 1;
  const auto approx = baseline_frequencies(m, {}, mc);
  CHECK_FALSE(approx.exact);
  for (const auto& [t, p] : exact.table.frequency) CHECK(std::abs(approx.table(t) - p) < 0.005);
}

TEST_CASE("spatial z statistic", "[spatial]") {
  CHECK(spatial_z(0.583, 0.482, 314) == Approx(3.58).margin(0.01));
  CHECK(spatial_z(0.0, 0.01, 314) == Approx(-1.78).margin(0.01));
  CHECK(spatial_z(0.2, 0.2, 314) == 0.0);
  CHECK(std::isinf(spatial_z(0.1, 0.0, 314)));
  CHECK(spatial_z(0.0, 0.0, 314) == 0.0);
}

TEST_CASE("spatial significance", "[spatial]") {
  FrequencyTable obs{2, 100, {{GP::unit(2), 0.5}, {GP::from_codes({1, 2}), 0.3}, {GP::from_codes({2, 1}), 0.2}}};
  const auto same = spatial_significance(obs, obs, 100);
  for (const auto& r : same.records) {
    CHECK(r.z == 0.0);
    CHECK_FALSE(r.significant);
  }
  CHECK(same.records.front().pattern == GP::unit(2));
  CHECK(same.critical_z == Approx(normal_quantile(1.0 - 0.05 / 6.0)));

  FrequencyTable base = obs;
  base.frequency[GP::unit(2)] = 0.7;
  base.frequency.erase(GP::from_codes({2, 1}));
  const auto r = spatial_significance(obs, base, 100);
  CHECK(r.records[0].significant);
  CHECK(r.records[2].impossible);
  CHECK(r.records[2].significant);
  CHECK(spatial_significance(obs, obs, 10).warnings.size() == 1);

  FrequencyTable other{3, 0, {}};
  CHECK_THROWS_AS(spatial_significance(obs, other, 100), std::invalid_argument);
}

TEST_CASE("level-shifted events give the unit pattern", "[spatial]") {
  std::vector<std::vector<int>> rows;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> level(0, 4);
  for (int k = 0; k < 100; ++k) rows.push_back(std::vector<int>(4, level(rng)));
  const auto m = make_matrix(rows);
  const auto obs = pattern_frequencies(spatial_encode(m, {}));
  const auto rep = spatial_significance(obs, baseline_frequencies(m, {}).table, 100);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].observed == 1.0);
  CHECK(rep.records[0].significant);
}

TEST_CASE("cramer's V", "[spatial]") {
  Eigen::VectorXi a(6), b(6);
  a << 0, 1, 2, 0, 1, 2;
  b << 5, 6, 7, 5, 6, 7;
  CHECK(cramers_v(a, b) == Approx(1.0));
  CHECK(cramers_v(a, Eigen::VectorXi::Zero(6)) == 0.0);
  Eigen::VectorXi c(4), d(4);
  c << 0, 0, 1, 1;
  d << 0, 1, 0, 1;
  CHECK(cramers_v(c, d) == Approx(0.0).margin(1e-12));

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(0, 4);
  Eigen::VectorXi iid(5000);
  for (auto& v : iid) v = u(rng);
  const auto ac = autocorrelation_check(ClassSeries{iid, "x"}, 100);
  CHECK(ac.v.size() == 100);
  CHECK(ac.mean < 0.05);

  // the lag-1 copy determines the series exactly
  Eigen::VectorXi cycle(50);
  for (Eigen::Index i = 0; i < 50; ++i) cycle(i) = static_cast<int>(i % 3);
  CHECK(autocorrelation_check(ClassSeries{cycle, "c"}, 1).v(0) == Approx(1.0));
  CHECK_THROWS_AS(autocorrelation_check(ClassSeries{cycle, "c"}, 25), std::invalid_argument);
}

TEST_CASE("exact binomial test for sparse patterns", "[spatial]") {
  CHECK(binomial_two_sided(5, 10, 0.5) == 1.0);
  CHECK(binomial_two_sided(10, 10, 0.5) == Approx(2.0 / 1024.0));
  CHECK(binomial_two_sided(0, 10, 0.5) == Approx(2.0 / 1024.0));
  CHECK(binomial_two_sided(0, 314, 1e-4) == 1.0);
  // P(X >= 1) = 1 - (1 - p)^K
  CHECK(binomial_two_sided(1, 314, 1e-4) == Approx(2.0 * (1.0 - std::pow(1.0 - 1e-4, 314))));
  CHECK(binomial_two_sided(0, 20, 0.0) == 1.0);
  CHECK(binomial_two_sided(3, 20, 0.0) == 0.0);
  CHECK(binomial_two_sided(20, 20, 1.0) == 1.0);

  // one sighting of a rare pattern: large z, but no evidence after the exact test
  FrequencyTable obs, base;
  obs.length = base.length = 2;
  obs.total = 314;
  obs.frequency[GP::from_codes({1, 2})] = 1.0 / 314.0;
  obs.frequency[GP::unit(2)] = 313.0 / 314.0;
  base.frequency[GP::from_codes({1, 2})] = 1e-4;
  base.frequency[GP::unit(2)] = 1.0 - 1e-4;
  const auto r = spatial_significance(obs, base, 314);
  for (const auto& rec : r.records) {
    CHECK(rec.exact_test);
    CHECK_FALSE(rec.significant);
  }
  CHECK(r.records.back().z > r.critical_z);
}
