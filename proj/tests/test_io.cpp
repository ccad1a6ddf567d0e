#include "catch_amalgamated.hpp"

#include "ordpat/flood.hpp"
#include "ordpat/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ordpat;

namespace {

ClassMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return parse_class_matrix(in, "t.csv");
}

std::string message_of(const std::string& text) {
  try {
    (void)parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ordpat_test_" + name);
}

}  // namespace

TEST_CASE("loading well-formed matrices", "[io]") {
  const auto m = parse("event,A,B\n1,0,-1\n2,3,2\n3,-1,4\n");
  CHECK(m.events() == 3);
  CHECK(m.gauge_count() == 2);
  CHECK(m.gauges == std::vector<std::string>{"A", "B"});
  CHECK(m.classes(2, 1) == 4);
  CHECK(m.classes(0, 1) == -1);

  const auto crlf = parse("\xEF\xBB\xBF" "date,A,B\r\n2002-08-12,1,2\r\n\r\n2002-08-13, 0 ,1\r\n");
  CHECK(crlf.gauges.front() == "A");
  CHECK(crlf.event_ids.back() == "2002-08-13");
  CHECK(crlf.classes(1, 0) == 0);
}

TEST_CASE("loader rejects malformed input with positions", "[io]") {
  const auto non_integer = message_of("event,A,B\n1,0,1\n2,2.5,1\n");
  CHECK(non_integer.find("t.csv:3:2") != std::string::npos);
  CHECK(non_integer.find("row 2") != std::string::npos);
  CHECK(non_integer.find("'A'") != std::string::npos);
  CHECK_FALSE(message_of("event,A,A\n1,0,1\n").empty());
  CHECK_FALSE(message_of("event,A,B\n1,0\n").empty());
  CHECK_FALSE(message_of("event,A,B\n1,0,\n").empty());
  CHECK_FALSE(message_of("event,A,B\n,0,1\n").empty());
  CHECK_FALSE(message_of("event,A,B\n1,-1,-1\n").empty());
  CHECK_FALSE(message_of("event\n1\n").empty());
  CHECK_FALSE(message_of("").empty());
  CHECK_FALSE(message_of("event,A\n1,x\n").empty());
  CHECK_FALSE(message_of("event,A\n1,99999999999\n").empty());
  CHECK_THROWS_AS(load_class_matrix("/nonexistent/dir/file.csv"), DataError);
}

TEST_CASE("round trip through files", "[io]") {
  const auto m = parse("event,A,B,C\n1,0,-1,2\n2,3,2,1\n3,-1,4,0\n");
  const auto path = temp_path("roundtrip.csv");
  save_class_matrix(path, m);
  const auto back = load_class_matrix(path);
  CHECK(back.classes == m.classes);
  CHECK(back.gauges == m.gauges);
  CHECK(back.event_ids == m.event_ids);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(save_class_matrix("/nonexistent/dir/out.csv", m), std::runtime_error);
}

TEST_CASE("plot data emission", "[io]") {
  const auto m = parse("event,A,B,C,D,E\n1,0,-1,2,1,1\n2,3,2,1,0,0\n");
  const auto path = temp_path("plot.csv");
  emit_plot_data(m, {"D", "A", "C", "B"}, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,D,A,C,B");
  const auto back = load_class_matrix(path);
  CHECK(back.gauge_count() == 4);
  CHECK(back.classes.col(1) == m.classes.col(0));
  CHECK(back.event_ids == std::vector<std::string>{"1", "2"});

  ClassMatrix empty;
  empty.gauges = {"A", "B"};
  empty.classes.resize(0, 2);
  emit_plot_data(empty, {}, path);
  std::ifstream again(path);
  std::stringstream all;
  all << again.rdbuf();
  CHECK(all.str() == "index,A,B\n");
  std::filesystem::remove(path);
}

TEST_CASE("flood classes from non-exceedance probabilities", "[io]") {
  CHECK(classify_peak(0.95) == 3);
  CHECK(classify_peak(0.49) == 0);
  CHECK(classify_peak(0.933) == 3);
  CHECK(classify_peak(0.5) == 1);
  CHECK(classify_peak(0.8) == 2);
  CHECK(classify_peak(0.966) == 4);
  CHECK(classify_peak(1.0) == 4);
  CHECK(classify_peak(0.0) == 0);
  CHECK_THROWS_AS(classify_peak(1.2), std::invalid_argument);
  CHECK_THROWS_AS(classify_peak(-0.1), std::invalid_argument);

  FloodClassBoundaries b{{{0, 0.0}, {1, 0.9}, {2, 0.7}}};
  CHECK_THROWS_AS(validate(b), std::invalid_argument);
  FloodClassBoundaries gap{{{0, 0.0}, {2, 0.6}}};
  CHECK_THROWS_AS(validate(gap), std::invalid_argument);
  FloodClassBoundaries high{{{0, 0.6}, {1, 0.8}}};
  CHECK_THROWS_AS(validate(high), std::invalid_argument);
  CHECK_NOTHROW(validate(FloodClassBoundaries::standard()));
}
