#include <doctest.h>

#include "fixtures.hpp"
#include "tdlab/errors.hpp"
#include "tdlab/serialize.hpp"

using namespace tdlab;
using tdlab::testing::r;

TEST_CASE("matrices serialize as rows of rational strings") {
  const Matrix m{{r("1/2"), 0}, {-3, r("-7/4")}};
  const Json j = to_json(m);
  CHECK(j.dump() == R"([["1/2","0"],["-3","-7/4"]])");
  CHECK(matrix_from_json(j) == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1/0"]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([[1]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([["1"],["1","2"]])")), ParseError);
}

TEST_CASE("pretty printing keeps scalar arrays on one line") {
  const Json j = Json::parse(R"({"a":[["1","2"],["3","4"]],"b":"x","c":[]})");
  CHECK(pretty(j) == "{\n  \"a\": [\n    [\"1\", \"2\"],\n    [\"3\", \"4\"]\n  ],\n  \"b\": \"x\",\n  \"c\": []\n}\n");
}

TEST_CASE("instances round-trip byte for byte") {
  for (const char* name : {"w1", "d2", "d3", "t121"}) {
    CAPTURE(name);
    const std::string text = read_file(tdlab::testing::data_path(std::string(name) + ".json"));
    CHECK(format_instance(parse_instance(text)) == text);
    CHECK(format_instance(tdlab::testing::load(name)) == text);
  }
}

TEST_CASE("exported subspace bases re-import identically") {
  const auto sys = tdlab::testing::load("t121");
  const auto app = build_apparatus(sys);
  const Json j = Json::parse(apparatus_json(app).dump());
  for (std::size_t i = 0; i < app.u.size(); ++i) {
    CHECK(subspace_from_json(j["U"][i], sys.dim()) == app.u[i]);
    CHECK(subspace_from_json(j["Udd"][i], sys.dim()) == app.udd[i]);
  }
  for (std::size_t i = 0; i < app.k_spaces.size(); ++i)
    CHECK(subspace_from_json(j["Kspaces"][i], sys.dim()) == app.k_spaces[i]);
  CHECK(matrix_from_json(j["B"]) == app.b);
}

TEST_CASE("d is accepted as an integer string") {
  const std::string text =
      R"({"d":"1","q":"2","a":"3","b":"5","A":[["37/6","0"],["1","13/6"]],"Astar":[["101/10","1"],["0","29/10"]]})";
  CHECK(parse_instance(text).params.d == 1);
}

TEST_CASE("malformed instances are parse errors") {
  CHECK_THROWS_AS(parse_instance("{"), ParseError);
  CHECK_THROWS_AS(parse_instance("[]"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"d":1})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"d":"1/2","q":"2","a":"3","b":"5","A":[],"Astar":[]})"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"d":1,"q":2,"a":"3","b":"5","A":[],"Astar":[]})"), ParseError);
}

TEST_CASE("report lines") {
  VerificationReport report;
  report.add("x.ok", "fine", true);
  report.add_residual("x.bad", "broken", Matrix{{1}});
  CHECK(format_report(report) ==
        "{\"check_id\":\"x.ok\",\"anchor\":\"fine\",\"pass\":true}\n"
        "{\"check_id\":\"x.bad\",\"anchor\":\"broken\",\"pass\":false,\"residual\":[[\"1\"]]}\n");
}

TEST_CASE("selection semantics") {
  CHECK(Selection::all().includes("anything"));
  CHECK_FALSE(Selection::none().includes("anything"));
  CHECK_FALSE(Selection::parse("").includes("thm.BK.1"));
  CHECK(Selection::parse("thm.BK").includes("thm.BK.1"));
  CHECK_FALSE(Selection::parse("thm.BK").includes("thm.BKx"));
  CHECK(Selection::parse("eq.psiR,all").is_all());
  CHECK(Selection::parse("eq.psiR").includes("eq.psiR"));
  CHECK_FALSE(Selection::parse("eq.psiR").includes("eq.psiRdd"));
}

TEST_CASE("unwritable paths are I/O errors") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x.json", "x"), IoError);
  CHECK_THROWS_AS(read_file("/nonexistent-dir/x.json"), IoError);
}
