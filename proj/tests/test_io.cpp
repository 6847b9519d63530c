#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eulat/config.hpp"
#include "eulat/textio.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>

using namespace eulat;
using cplx = std::complex<double>;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("doubles format to shortest round-trip decimals") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "-0");
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, 2.0 * std::acos(-1.0)})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("csv tables are rectangular, comma-joined, newline-terminated") {
  auto csv = csv_table({"k", "t"}, {{Cell(1), Cell(0.5)}, {Cell(-2), Cell("x")}});
  CHECK(csv == "k,t\n1,0.5\n-2,x\n");
  CHECK(csv_table({"a", "b"}, {}) == "a,b\n");
  CHECK_THROWS_AS(csv_table({"a", "b"}, {{Cell(1)}}), std::invalid_argument);
}

TEST_CASE("file helpers round-trip and report failures") {
  auto dir = std::filesystem::temp_directory_path() / "eulat_io_test";
  auto path = (dir / "nested" / "blob.csv").string();
  write_file(path, "a,b\n1,2\n");
  CHECK(read_file(path) == "a,b\n1,2\n");
  CHECK_THROWS_AS(read_file((dir / "missing.txt").string()),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("an empty document parses to the default scenario") {
  ScenarioConfig c = parse_config("{}");
  CHECK(c == ScenarioConfig{});
  CHECK(c.box.K == 8);
  CHECK(c.box.M == 8);
  CHECK(c.precision == Precision::double_prec);
  CHECK(c.bump == BumpSpec::half(1.0));
  CHECK_FALSE(c.frame.has_value());
  CHECK_FALSE(c.complex2d.has_value());
}

TEST_CASE("out-of-range exponents are rejected with the documented message") {
  CHECK(contains(error_of(R"({"g": {"law": "power", "alpha": 0.7}})"),
                 "must lie in (0, 1/2)"));
  CHECK(contains(error_of(R"({"analysis": {"alpha": 0.5}})"),
                 "must lie in (0, 1/2)"));
  CHECK(error_of(R"({"g": {"law": "power", "alpha": 0.49}})").empty());
}

TEST_CASE("unknown fields are rejected at every level") {
  CHECK(contains(error_of(R"({"bogus": 1})"), "unknown field 'bogus'"));
  CHECK(contains(error_of(R"({"box": {"K": 4, "Q": 1}})"), "unknown field 'Q'"));
  CHECK(contains(error_of(R"({"bump": {"kind": "half", "lo": 1}})"),
                 "unknown field 'lo'"));
}

TEST_CASE("syntax errors carry line and column positions") {
  std::string msg = error_of("{\n  \"box\": }");
  CHECK(contains(msg, "syntax error at line 2"));
  CHECK(contains(error_of(""), "syntax error"));
}

TEST_CASE("bump windows are validated through the config layer") {
  CHECK(contains(
      error_of(R"({"bump": {"kind": "multi", "windows": [[1, 2.5], [2, 3]]}})"),
      "bump"));
  CHECK(contains(error_of(R"({"bump": {"kind": "compact"}})"),
                 "bump.window is required"));
  CHECK(error_of(R"({"bump": {"kind": "compact", "window": [2, 3]}})").empty());
}

TEST_CASE("sample times must increase strictly") {
  CHECK(contains(error_of(R"({"sample_times": [0.0, 1.0, 1.0]})"),
                 "sample_times"));
  CHECK(error_of(R"({"sample_times": [0.0, 0.5, 2.0]})").empty());
}

TEST_CASE("precision names map to the two lanes") {
  CHECK(parse_config(R"({"precision": "exact"})").precision ==
        Precision::exact);
  CHECK(parse_config(R"({"precision": "double"})").precision ==
        Precision::double_prec);
  CHECK_FALSE(error_of(R"({"precision": "float"})").empty());
}

TEST_CASE("seed tables parse complex entries and check symmetry") {
  auto c = parse_config(
      R"({"g": {"table": {"1": [0.3, 0.4], "2": -0.25}}})");
  REQUIRE(c.g.kind == AmplitudeConfig::Kind::table);
  CHECK(c.g.table.at(1) == cplx(0.3, 0.4));
  CHECK(c.g.table.at(2) == cplx(-0.25, 0.0));
  auto gen = make_generator(c, config_frame(c));
  CHECK(gen.g_at(-1) == cplx(0.3, -0.4));

  CHECK_FALSE(
      error_of(R"({"g": {"table": {"1": [1, 2], "-1": [1, 2]}}})").empty());
  CHECK_FALSE(error_of(R"({"h": {"table": {"1": 1.0}}})").empty());
  CHECK(error_of(R"({"h": {"table": {"2": 1.0}}})").empty());
}

TEST_CASE("configs survive a serialize-parse round trip") {
  ScenarioConfig c;
  c.scenario = "roundtrip";
  c.frame = LatticeFrame{};
  c.frame->eta0 = c.frame->xi0 = {0, 2, 0};
  c.bump = BumpSpec::multi({{1.0, 2.0}, {3.0, 4.0}});
  c.h.kind = DecayLaw::Kind::table;
  c.h.table[3] = cplx(0.1, -0.2);
  c.h.table[-3] = cplx(0.1, 0.2);
  c.g.alpha = 0.25;
  c.g.scale = 1.5;
  c.box = Box{5, 3};
  c.sample_times = {0.0, 1.5, 3.5};
  c.analysis.q = {2.0, 3.0};
  c.analysis.dyadic_lo = 10;
  c.analysis.dyadic_hi = 16;
  c.analysis.s = {0.5, 1.0};
  c.complex2d = Complex2DConfig{};
  c.out_dir = "out/roundtrip";
  c.precision = Precision::exact;

  std::string text = serialize_config(c);
  ScenarioConfig back = parse_config(text);
  CHECK(back == c);
  CHECK(serialize_config(back) == text);
}

TEST_CASE("serialization is deterministic and key-sorted") {
  std::string a = serialize_config(ScenarioConfig{});
  std::string b = serialize_config(parse_config(a));
  CHECK(a == b);
  CHECK(a.find("\"analysis\"") < a.find("\"box\""));
  CHECK(a.find("\"box\"") < a.find("\"bump\""));
  CHECK(a.back() == '\n');
}

TEST_CASE("generators follow the configured laws") {
  ScenarioConfig c = parse_config(
      R"({"box": {"K": 4, "M": 3},
          "h": {"law": "exponential", "rate": 2.0},
          "g": {"law": "power", "alpha": 0.3, "scale": 1.0}})");
  auto gen = make_generator(c, config_frame(c));
  CHECK(gen.h_at(2) == cplx(std::exp(-4.0), 0.0));
  CHECK(gen.h_at(4) == cplx(std::exp(-8.0), 0.0));
  CHECK(gen.g_at(2) == cplx(std::pow(2.0, -0.3), 0.0));
  CHECK(gen.g_at(-3) == cplx(std::pow(3.0, -0.3), 0.0));
  CHECK(gen.bump == c.bump);
}
