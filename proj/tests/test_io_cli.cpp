// Tests for the serialization helpers: canonical double formatting, JSON
// rendering of the plan types, deterministic CSV preambles, event text
// round-trips, and file helpers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rfim/bounds.hpp>
#include <rfim/events.hpp>
#include <rfim/io.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

using namespace rfim;

TEST_CASE("fmt_double round-trips exactly through strtod") {
  const double cases[] = {0.0,
                          1.0,
                          -1.0,
                          0.1,
                          1.0 / 3.0,
                          1e300,
                          -1e-300,
                          3.141592653589793,
                          123456789.123456789,
                          5e-324,
                          1.7976931348623157e308,
                          0.49999999999999994};
  for (double x : cases) {
    const std::string s = fmt_double(x);
    CAPTURE(s);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == x);
  }
  CHECK(fmt_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(fmt_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(fmt_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("strprintf formats like printf") {
  CHECK(strprintf("%d-%s-%.2f", 7, "x", 1.25) == "7-x-1.25");
  CHECK(strprintf("no args") == "no args");
  // long outputs do not truncate
  std::string long_arg(500, 'a');
  CHECK(strprintf("%s", long_arg.c_str()).size() == 500);
}

TEST_CASE("event text forms round-trip through the parser") {
  const char* texts[] = {"spin_at:0:+",        "spin_at:-12:-",
                         "run_equals:-2..3:+", "run_any:-2..3",
                         "long_run:-5..5:4",   "well:1..3:-",
                         "small_well_at:0:3:-", "any_small_well:-5..5:2"};
  for (const char* text : texts) {
    CAPTURE(text);
    const EventSpec e = parse_event(text);
    CHECK(to_string(e) == text);
    CHECK(parse_event(to_string(e)) == e);
  }
}

TEST_CASE("malformed event text is rejected") {
  for (const char* text :
       {"spin_at", "spin_at:0", "spin_at:x:+", "spin_at:0:?", "run_equals:3:+",
        "run_equals:1..2..3:+", "long_run:1..2", "bogus:1:+", "",
        "well:1..2:-:extra", "any_small_well:1..2:x"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_event(text), std::invalid_argument);
  }
}

TEST_CASE("plan JSON uses the documented keys and integer rendering") {
  const auto p = plan_upper(0.25, 0.1, 1.0, 10.0, 0.5,
                            [](double th) { return default_g(0.25, th); });
  const std::string j = to_json(p);
  // integer-valued doubles print as integers
  CHECK(j.find("\"M\": 14") != std::string::npos);
  CHECK(j.find("\"two_N_plus_1\": 6") != std::string::npos);
  CHECK(j.find("\"N\": 2.5") != std::string::npos);  // (two_N_plus_1 - 1) / 2
  CHECK(j.find("\"delta\":") != std::string::npos);
  CHECK(j.find("\"L_max\":") != std::string::npos);
  CHECK(j.find("\"diamV\":") != std::string::npos);
  CHECK(j.find("\"regime\": \"mid\"") != std::string::npos);
  CHECK(j.find("\"in_regime\": true") != std::string::npos);
  CHECK(j.find("\"checks\":") != std::string::npos);
  // no NaN/Infinity literals leak into JSON
  CHECK(j.find("Infinity") == std::string::npos);
  CHECK(j.find("NaN") == std::string::npos);
}

TEST_CASE("half-regime plan JSON renders overflowed entries as strings") {
  const auto p = plan_upper(0.5, 8e-6, 1.0, 10.0, 0.5,
                            [](double th) { return default_g(0.5, th); });
  const std::string j = to_json(p);
  CHECK(j.find("\"inf\"") != std::string::npos);
  CHECK(j.find("\"log\":") != std::string::npos);
  CHECK(j.find("Infinity") == std::string::npos);
}

TEST_CASE("lower plan and summary JSON carry their documented keys") {
  const double theta = 0.1715728752538099 / std::sqrt(40960.0);
  const auto p = plan_lower(0.5, theta, 2000.0, 2.0, [](double) { return 3.0; });
  const std::string j = to_json(p);
  CHECK(j.find("\"b_bar\":") != std::string::npos);
  CHECK(j.find("\"L_min\": 404") != std::string::npos);
  CHECK(j.find("\"V_min\": 3") != std::string::npos);
  CHECK(j.find("\"measure_bound\":") != std::string::npos);
  CHECK(j.find("\"D\": 2") != std::string::npos);

  const auto s = theorem_summary(0.5, 0.01, 67.0206543960195);
  const std::string js = to_json(s);
  CHECK(js.find("\"beta_floor\":") != std::string::npos);
  CHECK(js.find("\"exponent_pair\"") != std::string::npos);
  CHECK(js.find("\"upper\":") != std::string::npos);
  CHECK(js.find("\"lower\":") != std::string::npos);
  CHECK(js.find("\"bracket_ok\":") != std::string::npos);

  // no exponent pair away from alpha = 1/2
  const auto s2 = theorem_summary(0.25, 1e-4, 1e7);
  CHECK(to_json(s2).find("\"exponent_pair\"") == std::string::npos);
}

TEST_CASE("csv preamble is deterministic and carries the tool version") {
  const std::string a = csv_preamble(
      {{"tool_version", kToolVersion}, {"config", "alpha=0"}, {"seed", "123"}}, "x,y");
  const std::string b = csv_preamble(
      {{"tool_version", kToolVersion}, {"config", "alpha=0"}, {"seed", "123"}}, "x,y");
  CHECK(a == b);
  CHECK(a.find("# tool_version: 1.0.0") != std::string::npos);
  CHECK(a.find("# config: alpha=0") != std::string::npos);
  CHECK(a.find("# seed: 123") != std::string::npos);
  // header row is the last line
  CHECK(a.rfind("x,y\n") == a.size() - 4);
  // no timestamps or environment content
  CHECK(a.find("date") == std::string::npos);
  CHECK(a.find("time") == std::string::npos);
}

TEST_CASE("write_file and read_file round-trip bytes") {
  const std::string path = "io_roundtrip_tmp.txt";
  const std::string content = "line1\nline2\n# comment, with commas\n";
  write_file(path, content);
  CHECK(read_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely_missing_file_xyz.txt"), std::runtime_error);
}
