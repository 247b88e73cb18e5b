#include "webgeom/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "doctest.h"

using namespace webgeom;
using nlohmann::json;

namespace {

Problem from_text(const std::string& text) { return parse_problem_text(text); }

}  // namespace

TEST_CASE("problem documents parse into the right spec") {
  Problem web = from_text(R"({"kind":"web","m":2,"w":["x1+y1","x2+y2"]})");
  REQUIRE(std::holds_alternative<WebSpec>(web));
  CHECK(std::get<WebSpec>(web).m == 2);
  CHECK(std::get<WebSpec>(web).w.size() == 2);
  CHECK(std::get<WebSpec>(web).samples.empty());

  Problem heav = from_text(R"({"kind":"heavenly","m":2,"R":["0","-x1^2/2"]})");
  REQUIRE(std::holds_alternative<HeavenlySpec>(heav));
  CHECK(is_zero_exact(std::get<HeavenlySpec>(heav).R[1] - parse("-x1^2/2", {"x1"}), {"x1"}));

  Problem th = from_text(R"({"kind":"theta","m":2,"theta":{"12":"x1^3/6"}})");
  REQUIRE(std::holds_alternative<ThetaSpec>(th));
  CHECK(std::get<ThetaSpec>(th).f.empty());
  CHECK(std::get<ThetaSpec>(th).theta.count({0, 1}) == 1);

  Problem ode = from_text(R"({"kind":"ode","m":2,"F":["y1^3","0"]})");
  REQUIRE(std::holds_alternative<OdeSpec>(ode));
  CHECK(std::get<OdeSpec>(ode).F.size() == 2);
}

TEST_CASE("declared web samples are read as exact rationals") {
  Problem web = from_text(
      R"({"kind":"web","m":2,"w":["x1+y1","x2+y2"],"samples":[[1,"1/2","-3/4",0]]})");
  const WebSpec& spec = std::get<WebSpec>(web);
  REQUIRE(spec.samples.size() == 1);
  CHECK(std::get<Rational>(spec.samples[0].at("x1")) == rational(1));
  CHECK(std::get<Rational>(spec.samples[0].at("x2")) == rational(1, 2));
  CHECK(std::get<Rational>(spec.samples[0].at("y1")) == rational(-3, 4));
  CHECK(std::get<Rational>(spec.samples[0].at("y2")) == rational(0));
}

TEST_CASE("gauge forms load for m >= 3 with 1-based multi-index keys") {
  Problem th = from_text(
      R"({"kind":"theta","m":3,
          "theta":{"12":"x1*x2","13":"0","23":"x3^2*y1"},
          "f":{"12":{"":"x1*y1"}}})");
  const ThetaSpec& spec = std::get<ThetaSpec>(th);
  CHECK(spec.theta.size() == 3);
  REQUIRE(spec.f.count({0, 1}) == 1);
  CHECK(spec.f.at({0, 1}).degree() == 0);

  // m = 4: gauge forms are 1-forms keyed by single differentials
  Problem th4 = from_text(
      R"({"kind":"theta","m":4,
          "theta":{"12":"x1*x2"},
          "f":{"34":{"1":"x1*y1","2":"x2"}}})");
  const ThetaSpec& spec4 = std::get<ThetaSpec>(th4);
  REQUIRE(spec4.f.count({2, 3}) == 1);
  CHECK(spec4.f.at({2, 3}).degree() == 1);
  CHECK(is_zero_exact(spec4.f.at({2, 3}).coefficient({0}) - parse("x1*y1", {"x1", "y1"}),
                      {"x1", "y1"}));
}

TEST_CASE("validation errors name the offending field") {
  CHECK_THROWS_WITH_AS(from_text(R"({"m":2})"),
                       "spec: missing \"kind\" (expected \"web\", \"heavenly\", \"theta\", or "
                       "\"ode\")",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(from_text(R"({"kind":"poisson","m":2})"),
                       "spec: unknown kind \"poisson\"", std::invalid_argument);
  CHECK_THROWS_WITH_AS(from_text(R"({"kind":"web","w":["x1+y1"]})"),
                       "field \"m\": expected an integer", std::invalid_argument);
  CHECK_THROWS_WITH_AS(from_text(R"({"kind":"web","m":2,"w":["x1+y1"]})"),
                       "field \"w\": expected 2 expressions for m = 2, got 1",
                       std::invalid_argument);
  CHECK_THROWS(from_text(R"({"kind":"web","m":2,"w":["x1+y1","x3+y2"]})"));  // unknown identifier

  // the parser's offset survives into the field diagnostic
  try {
    from_text(R"({"kind":"heavenly","m":2,"R":["0","x1++x2"]})");
    FAIL("expected a parse failure");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("field \"R[1]\"") != std::string::npos);
    CHECK(msg.find("offset") != std::string::npos);
  }

  CHECK_THROWS_WITH_AS(
      from_text(R"({"kind":"theta","m":2,"theta":{"21":"x1"}})"),
      "field \"theta\": bad pair key \"21\" (expected digits \"ij\" with 1 <= i < j <= 2)",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(from_text(R"({"kind":"theta","m":2,"theta":{"12":"0"},"f":{}})"),
                       "field \"f\": gauge forms are not defined for m = 2",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      from_text(R"({"kind":"theta","m":3,"theta":{"12":"0"},"f":{"12":{"1":"x1"}}})"),
      "field \"f[\"12\"]\": multi-index \"1\" must list 0 of the first 3 differentials",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      from_text(R"({"kind":"web","m":2,"w":["x1+y1","x2+y2"],"samples":[[1,2,3]]})"),
      "field \"samples[0]\": expected 4 coordinates", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      from_text(R"({"kind":"web","m":2,"w":["x1+y1","x2+y2"],"samples":[[1,2,3,"1/0"]]})"),
      "field \"samples[0][3]\": not a rational literal: '1/0'", std::invalid_argument);
  CHECK_THROWS_AS(from_text("{invalid"), std::invalid_argument);
}

TEST_CASE("problem files load from disk") {
  std::string path = "io_roundtrip_spec.json";
  {
    std::ofstream out(path);
    out << R"({"kind":"ode","m":1,"F":["-x1"]})";
  }
  Problem p = load_problem(path);
  REQUIRE(std::holds_alternative<OdeSpec>(p));
  CHECK(std::get<OdeSpec>(p).m == 1);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_problem("no_such_file.json"), std::runtime_error);
}

TEST_CASE("jet solutions round-trip through JSON") {
  auto seed = poly_from_expr(parse("x1*x2*y1 + x1^2*y2/2", {"x1", "x2", "y1", "y2"}));
  REQUIRE(seed.has_value());
  JetSolution sol = jet_solve(*seed, 6);
  Certificate cert = certify(sol);

  nlohmann::ordered_json doc = solution_json(sol, cert);
  CHECK(doc["D"] == 6);
  CHECK(doc["theta"]["(1,1,1,0)"] == "1");      // exponent key order is x1,x2,y1,y2
  CHECK(doc["theta"]["(2,0,0,1)"] == "1/2");
  CHECK(doc["theta"]["(0,1,3,0)"] == "-3/10");  // min-norm correction survives serialization
  CHECK(doc["certificate"]["all_passed"] == true);
  CHECK(doc["certificate"]["residual"]["exact_zero"] == true);

  JetSolution back = solution_from_json(json::parse(doc.dump()));
  CHECK(back.D == sol.D);
  CHECK(back.theta == sol.theta);
  CHECK(back.residual == sol.residual);
  CHECK(back.seed == sol.seed);

  Certificate cert2 = certify(back);
  CHECK(cert2.all_passed());

  CHECK_THROWS_AS(solution_from_json(json::parse(R"({"theta":{}})")), std::invalid_argument);
  CHECK_THROWS_AS(solution_from_json(json::parse(R"x({"D":6,"theta":{"(1,1)":"1"}})x")),
                  std::invalid_argument);
}

TEST_CASE("certificate JSON carries the clause evidence") {
  JetSolution sol;
  sol.D = 6;
  sol.theta = *poly_from_expr(parse("x1^2*x2^2", {"x1", "x2"}));
  Certificate cert = certify(sol);
  nlohmann::ordered_json j = certificate_json(cert);
  CHECK(j["residual"]["pass"] == false);
  CHECK(j["residual"]["witness"] == "-12*x1^2*x2^2");
  CHECK(j["residual"]["lowest_degree"] == 4);
  CHECK(j["first_order"]["lowest_degree"] == 3);
  CHECK(j["commutators"]["pass"] == false);
  CHECK(j["trace"]["pass"] == true);
  CHECK(j["frames"]["applicable"] == false);
  CHECK(j["all_passed"] == false);
}
