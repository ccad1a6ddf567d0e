#include "catch_amalgamated.hpp"

#include "ordpat/io.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ORDPAT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "ordpat_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string ensemble_file() {
  static const std::string path = [] {
    const auto p = (scratch() / "ensemble.csv").string();
    const auto r = run("simulate --model flood --stations 5 --events 120 --seed 11 -o " + p);
    REQUIRE(r.code == 0);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("usage errors exit with 1", "[cli]") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("enumerate --n 9").code == 1);
  CHECK(run("pairwise").code == 1);
  CHECK(run("pairwise -i " + ensemble_file() + " --scheme nope").code == 1);
  CHECK(run("pairwise -i " + ensemble_file() + " --format wide").code == 1);
  CHECK(run("encode 1 2 3 --tie-policy nope").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("data errors exit with 2", "[cli]") {
  CHECK(run("pairwise -i /nonexistent.csv").code == 2);
  CHECK(run("pairwise -i " + write_file("bad.csv", "event,A,B\n1,2.5,1\n")).code == 2);
  CHECK(run("spatial -i " + write_file("dup.csv", "event,A,A\n1,1,1\n")).code == 2);
  CHECK(run("classify 1.5").code == 2);
}

TEST_CASE("enumerate, encode and classify", "[cli]") {
  const auto e = run("enumerate --n 4");
  REQUIRE(e.code == 0);
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 76);
  const auto enc = run("encode 4 4 4 4 --n 4 --tie-policy first");
  CHECK(enc.out == "start,generalized,classical\n0,\"(1,1,1,1)\",\"(4,3,2,1)\"\n");
  const auto skip = run("encode 2 2 --n 2 --tie-policy skip");
  CHECK(skip.out.find("skipped") != std::string::npos);
  CHECK(run("classify 0.95 0.49 0.933").out == "probability,class\n0.95,3\n0.49,0\n0.933,3\n");
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST_CASE("pairwise output is symmetric and independent of the job count", "[cli]") {
  const std::string base = "pairwise -i " + ensemble_file() + " --seed 4 --bootstrap 100";
  for (const std::string stat : {"total", "comparison", "ord"}) {
    const auto one = run(base + " --statistic " + stat + " --jobs 1");
    const auto four = run(base + " --statistic " + stat + " --jobs 4");
    REQUIRE(one.code == 0);
    CHECK(one.out == four.out);
    const auto rows = split_csv(one.out);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i)
      for (std::size_t j = 1; j < rows.size(); ++j) CHECK(rows[i][j] == rows[j][i]);
  }
  const auto long_one = run(base + " --format long --jobs 1");
  CHECK(long_one.out == run(base + " --format long --jobs 3").out);
  CHECK(split_csv(long_one.out).size() == 11);
  CHECK(split_csv(run(base + " --format long --reference G3").out).size() == 5);
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
  for (const std::string args : {"spatial --gauges G1,G2,G3", "benchmark", "plot-data --gauges G2,G1"}) {
    const auto a = (scratch() / "a.out").string(), b = (scratch() / "b.out").string();
    REQUIRE(run(args + " -i " + ensemble_file() + " --seed 2 -o " + a).code == 0);
    REQUIRE(run(args + " -i " + ensemble_file() + " --seed 2 -o " + b).code == 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK_FALSE(sa.str().empty());
  }
  const auto sim = run("benchmark --beta 0.3,0.6 --length 200 --replications 4 --seed 1");
  REQUIRE(sim.code == 0);
  CHECK(sim.out == run("benchmark --beta 0.3,0.6 --length 200 --replications 4 --seed 1 --jobs 2").out);
  CHECK(split_csv(sim.out).size() == 3);
}

TEST_CASE("strict mode escalates numerical warnings", "[cli]") {
  // constant gauges: the comparison value is 1 and the ord term degenerates
  const auto flat = write_file("flat.csv", "event,A,B\n1,2,2\n2,2,2\n3,2,2\n4,2,2\n5,2,2\n6,2,2\n");
  CHECK(run("pairwise -i " + flat + " --bootstrap 0").code == 0);
  CHECK(run("pairwise -i " + flat + " --bootstrap 0 --strict").code == 3);
  CHECK(run("pairwise -i " + ensemble_file() + " --bootstrap 0 --strict").code == 0);
}

TEST_CASE("simulate writes loadable matrices", "[cli]") {
  const auto path = (scratch() / "counts.csv").string();
  REQUIRE(run("simulate --model ingarch --beta 0.3 --length 300 --series 3 --seed 5 -o " + path).code == 0);
  const auto m = ordpat::load_class_matrix(path);
  CHECK(m.events() == 300);
  CHECK(m.gauge_count() == 3);
  CHECK(run("simulate --model ingarch --beta 1.2").code == 1);
}
