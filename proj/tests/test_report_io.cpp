// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "doctest.h"
#include "drot/errors.hpp"
#include "drot/report_io.hpp"
#include "drot/svg.hpp"
#include "drot/geometry.hpp"

using namespace drot;

TEST_CASE("census JSON schema") {
  const auto r = scan_ball(Rational(25, 4), RotationParams::parse("rat:0/1"));
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"params", "radius_sq", "histogram", "orbit_reps", "unresolved",
                                         "counts", "bounds", "empirical_C", "meta"});
  CHECK(j["histogram"] == Json::parse(R"({"1":1,"4":5})"));
  CHECK(j["radius_sq"] == "rat:25/4");
  CHECK(j["params"]["lambda"] == "rat:0/1");
  CHECK(j["empirical_C"] == "rat:12/5");
}

TEST_CASE("census JSON round trip") {
  for (auto [l, e] : {std::pair{"rat:1/2", "rat:0/1"}, std::pair{"quad:1,1,2,5", "rat:1/1"},
                      std::pair{"quad:0,1,1,2", "quad:1,1,3,2"}}) {
    const auto p = RotationParams::parse(l, e);
    auto r = scan_ball(Rational(200), p, Budget{50, Rational(10000)});
    const std::string text = dump(to_json(r));
    const auto back = census_from_json_text(text);
    CHECK(back == r);
    CHECK(dump(to_json(back)) == text);
  }
}

TEST_CASE("large coordinates survive as strings") {
  const LatticeState s(BigInt("123456789012345678901234567890"), BigInt(-4));
  const Json j = to_json(s);
  CHECK(j[0].is_string());
  CHECK(j[1].is_number_integer());
  CHECK(state_from_json(j) == s);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(census_from_json_text("{"), ParseError);
  CHECK_THROWS_AS(census_from_json_text("{}"), ParseError);
  CHECK_THROWS_AS(census_from_json_text("[1,2]"), ParseError);
}

TEST_CASE("CSV columns") {
  const auto r = scan_ball(Rational(25, 4), RotationParams::parse("rat:0/1"));
  std::istringstream in(to_csv(r));
  std::string line;
  std::getline(in, line);
  CHECK(line == "canonical_x,canonical_y,period,symmetry_class");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == r.orbit_reps.size());
  CHECK(to_csv(r).find("0,0,1,doubly_symmetric\n") != std::string::npos);
}

TEST_CASE("SVG trap markers") {
  auto markers = [](const std::string& svg) {
    std::size_t n = 0, pos = 0;
    while ((pos = svg.find("class=\"trap\"", pos)) != std::string::npos) ++n, ++pos;
    return n;
  };
  const auto half = RotationParams::parse("rat:1/2");
  const std::string svg = plot_trap_svg(Rational(441, 4), half);
  CHECK(markers(svg) == 21);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(markers(plot_trap_svg(Rational(25, 4), RotationParams::parse("rat:0/1"))) == 5);
  const auto shifted = RotationParams::parse("quad:1,1,2,5", "rat:1/1");
  CHECK(markers(plot_trap_svg(Rational(100), shifted)) == trap_count(natural_spec(Rational(100), shifted), shifted));
}
