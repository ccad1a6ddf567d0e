#include "catch_amalgamated.hpp"

#include "ordpat/analysis.hpp"

#include <random>
#include <sstream>

using namespace ordpat;

namespace {

ClassMatrix ensemble(std::uint64_t seed, int gauges = 6, int events = 200) {
  FloodEnsembleSpec spec;
  spec.seed = seed;
  spec.gauges = gauges;
  spec.events = events;
  spec.common_weight = 0.8;
  return simulate_flood_ensemble(spec);
}

}  // namespace

TEST_CASE("config validation", "[analysis]") {
  AnalysisConfig c;
  CHECK_NOTHROW(validate(c));
  c.n = 9;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.n = 4;
  c.stride = 2;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.stride = 4;
  c.scheme = "nope";
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.scheme = "auto";
  c.tie_policy = "nope";
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.tie_policy = "skip";
  c.level = 1.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("pairwise matrices are symmetric with unit diagonal", "[analysis]") {
  const auto m = ensemble(1);
  AnalysisConfig c;
  c.bootstrap_replicates = 50;
  const auto r = run_pairwise(c, m);
  CHECK(r.gauges.size() == 6);
  CHECK(r.pairs.size() == 15);
  for (const auto* mat : {&r.total_score, &r.score_comparison, &r.p, &r.q, &r.ord}) CHECK(*mat == mat->transpose());
  CHECK(r.total_score.diagonal().isOnes());
  CHECK(r.p.diagonal().isOnes());

  c.threads = 4;
  const auto par = run_pairwise(c, m);
  CHECK(par.total_score == r.total_score);
  std::ostringstream a, b;
  write_pairwise_long(a, r);
  write_pairwise_long(b, par);
  CHECK(a.str() == b.str());

  std::ostringstream ref;
  write_pairwise_long(ref, r, "G2");
  std::istringstream lines(ref.str());
  std::string line;
  int count = 0;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    CHECK(line.find("G2") != std::string::npos);
    ++count;
  }
  CHECK(count == 5);
}

TEST_CASE("a duplicated gauge dominates the pairwise maximum", "[analysis]") {
  auto m = ensemble(2, 13, 314);
  m.classes.col(12) = m.classes.col(4);
  AnalysisConfig c;
  c.bootstrap_replicates = 0;
  const auto r = run_pairwise(c, m);
  CHECK(r.total_score(4, 12) == 1.0);
  Eigen::MatrixXd off = r.total_score;
  off.diagonal().setZero();
  Eigen::Index i = 0, j = 0;
  off.maxCoeff(&i, &j);
  CHECK(std::minmax(i, j) == std::minmax(Eigen::Index{4}, Eigen::Index{12}));
}

TEST_CASE("matrix writer", "[analysis]") {
  Eigen::MatrixXd v(2, 2);
  v << 1.0, 0.4512, 0.4512, 1.0;
  std::ostringstream out;
  write_matrix_csv(out, {"A", "B"}, v);
  CHECK(out.str() == "gauge,A,B\nA,100.00,45.12\nB,45.12,100.00\n");
}

TEST_CASE("pairwise errors name the pair", "[analysis]") {
  ClassMatrix m;
  m.gauges = {"A", "B"};
  m.event_ids = {"1", "2"};
  m.classes.resize(2, 2);
  m.classes << 0, 1, 1, 0;
  AnalysisConfig c;
  try {
    (void)run_pairwise(c, m);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("(A, A)") != std::string::npos);
  }
  c.gauges = {"A"};
  CHECK_THROWS_AS(run_pairwise(c, m), std::invalid_argument);
}

TEST_CASE("spatial report", "[analysis]") {
  const auto m = ensemble(3, 6, 314);
  AnalysisConfig c;
  c.gauges = {"G1", "G2", "G3", "G4"};
  const auto r = run_spatial(c, m);
  double sum = 0.0;
  for (const auto& rec : r.records) sum += rec.observed;
  CHECK(sum == Catch::Approx(1.0));
  CHECK(r.gauges == c.gauges);
  CHECK(r.baseline_exact);
  for (std::size_t k = 1; k < r.records.size(); ++k) CHECK(r.records[k - 1].observed >= r.records[k].observed);
  std::ostringstream out;
  write_spatial_table(out, r);
  CHECK(out.str().find("pattern,count,observed_pct,baseline_pct,z,p_value,test,flag") != std::string::npos);
  CHECK(out.str().find("(1 1 1 1)") != std::string::npos);
}

TEST_CASE("tie-handling benchmark", "[analysis]") {
  AnalysisConfig c;
  c.seed = 7;
  SECTION("identical tied series") {
    auto m = ensemble(4, 3, 300);
    m.classes.col(1) = m.classes.col(0);
    c.gauges = {"G1", "G2"};
    const auto t = run_benchmark(c, m);
    REQUIRE(t.rows.size() == 6);
    for (const auto& row : t.rows) {
      if (row.approach == "Generalized") CHECK(row.mean == 1.0);
      if (row.approach == "Randomized ties") CHECK(row.mean < 1.0);
    }
  }
  SECTION("tie-free input: randomization and first appearance coincide") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> big(0, 1 << 30);
    ClassMatrix m;
    m.gauges = {"A", "B", "C"};
    m.classes.resize(400, 3);
    for (Eigen::Index e = 0; e < 400; ++e) {
      m.event_ids.push_back(std::to_string(e + 1));
      const int common = big(rng) / 2;
      for (Eigen::Index g = 0; g < 3; ++g) m.classes(e, g) = common + big(rng) / 4;
    }
    const auto t = run_benchmark(c, m);
    std::map<std::pair<std::string, int>, double> mean;
    for (const auto& row : t.rows) mean[{row.approach, row.n}] = row.mean;
    for (const int n : {4, 6}) CHECK(mean[{"Randomized ties", n}] == mean[{"FirstAppearance", n}]);
    std::ostringstream out;
    write_benchmark_table(out, t);
    CHECK(out.str().rfind("approach,n4_mean,n4_min,n4_max,n6_mean,n6_min,n6_max\nGeneralized,", 0) == 0);
  }
}

TEST_CASE("simulation benchmark rows", "[analysis]") {
  IngarchSpec spec;
  spec.beta = {0.3};
  spec.length = 200;
  spec.seed = 3;
  AnalysisConfig c;
  const auto t = run_benchmark(c, spec, 5);
  CHECK(t.rows.size() == 6);
  for (const auto& row : t.rows) CHECK(row.samples == 5);
  std::ostringstream out;
  write_coherence_table(out, {{"x", coherence_benchmark(spec, 4, WeightScheme::generalized_short(), 3)}});
  CHECK(out.str().rfind("series,mean,min,max\nx,", 0) == 0);
}
