#include <sstream>

#include "annealdyn/io.hpp"
#include "doctest.h"

using namespace annealdyn;

namespace {

std::string data(const char* name) { return std::string(ANNEALDYN_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("problem documents") {
  const auto p = load_problem(data("problem_custom.json"));
  CHECK(p.size() == 3);
  CHECK(p.field(1) == -0.2);
  CHECK(p.coupling(0, 1) == -0.5);
  CHECK(p.coupling(2, 1) == 0.25);
  CHECK(p.coupling(2, 0) == 0.0);

  const auto back = problem_from_json(problem_to_json(p));
  CHECK(back.spectrum() == p.spectrum());
  CHECK(problem_from_json(json{{"name", "2S3"}}).field(0) == -0.95);

  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"n": 2, "h": [0.1]})")), ParseError);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"n": 2, "h": [0, 0], "J": [[1, 0]]})")), ParseError);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"n": 2, "h": [0, 0], "J": [[1, 1, 0.5]]})")), ParseError);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"n": 1, "h": [9.0]})")), ParseError);
  CHECK_NOTHROW(problem_from_json(json::parse(R"({"n": 1, "h": [9.0], "max_abs_field": 10})")));
  CHECK_THROWS_AS(problem_from_json(json{{"name", "2S9"}}), ParseError);
  CHECK_THROWS_AS(load_problem(data("missing.json")), ParseError);
}

TEST_CASE("schedule tables") {
  const auto a = load_schedule_table(data("schedule_A.txt"));
  CHECK(a(0.25) == doctest::Approx(3.0));
  CHECK(a(1.0) == 0.0);
  const auto sch = Schedule::tabulated(a, load_schedule_table(data("schedule_B.txt")));
  CHECK(sch.B(0.5) == doctest::Approx(2.05));

  std::istringstream bad("0 1\n0.5 x\n1 2\n");
  CHECK_THROWS_AS(read_schedule_table(bad), ParseError);
  std::istringstream backwards("0 1\n0.6 2\n0.4 3\n1 4\n");
  CHECK_THROWS_AS(read_schedule_table(backwards), ParseError);
}

TEST_CASE("frequency csv") {
  const auto t = load_frequencies(data("frequencies.csv"));
  CHECK(t.f[0] == 0.5);
  CHECK(t.f[3] == 0.05);
  CHECK(t.count == 1000);

  std::istringstream two("0.25,0.25,0.25,0.25\n1,0,0,0\n");
  const auto rows = read_frequency_csv(two);
  CHECK(rows.size() == 2);
  CHECK(rows[1].count == 0);

  std::istringstream short_row("f1,f2,f3,f4\n0.5,0.5,0\n");
  CHECK_THROWS_AS(read_frequency_csv(short_row), ParseError);
  std::istringstream bad_sum("0.5,0.5,0.5,0\n");
  CHECK_THROWS_AS(read_frequency_csv(bad_sum), ParseError);
  std::istringstream empty("f1,f2,f3,f4\n");
  CHECK_THROWS_AS(read_frequency_csv(empty), ParseError);
}

TEST_CASE("raw samples use the problems index convention") {
  const auto t = load_frequencies(data("samples.txt"));
  CHECK(t.count == 5);
  CHECK(t.f[0] == doctest::Approx(0.2));
  CHECK(t.f[1] == doctest::Approx(0.6));
  CHECK(t.f[2] == 0.0);
  CHECK(t.f[3] == doctest::Approx(0.2));

  std::istringstream three("+++\n");
  CHECK_THROWS_AS(read_samples(three), ParseError);
  std::istringstream junk("+x\n");
  CHECK_THROWS_AS(read_samples(junk), ParseError);
  std::istringstream none("# nothing\n");
  CHECK_THROWS_AS(read_samples(none), ParseError);
}

TEST_CASE("bath manifest") {
  const auto m = bath_manifest({16, 0.001, 1.0, 0.1, 42}, 0.01, 2000.0, {0.0, 900.0});
  CHECK(m.at("seed") == 42);
  CHECK(m.at("bath_spins") == 16);
  CHECK(m.at("g") == 0.001);
  CHECK(m.at("dt_ns") == 0.01);
  CHECK(m.at("onset_ns")[1] == 900.0);
}
