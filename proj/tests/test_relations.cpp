#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "treeaut/engine.hpp"
#include "treeaut/relations.hpp"

using namespace treeaut;

namespace {

SuiteReport run(const std::string& suite, std::map<std::string, std::string> params = {}) {
  Engine eng;
  return verify(eng, suite, params);
}

}  // namespace

TEST_CASE("suite names are the full sorted catalog") {
  const std::vector<std::string> expected = {"commutation", "delta",    "even-half",
                                             "n4",          "normalizer", "powers",
                                             "symmetric",   "theorem-b", "transposition",
                                             "wreath"};
  CHECK(suite_names() == expected);
}

TEST_CASE("every suite passes with default parameters") {
  const std::map<std::string, std::size_t> expected_counts = {
      {"commutation", 14}, {"delta", 11},     {"even-half", 14}, {"n4", 11},
      {"normalizer", 7},   {"powers", 6},     {"symmetric", 6},  {"theorem-b", 4},
      {"transposition", 27}, {"wreath", 5},
  };
  for (const std::string& suite : suite_names()) {
    CAPTURE(suite);
    SuiteReport report = run(suite);
    CHECK(report.passed());
    CHECK(report.suite == suite);
    CHECK(report.relations.size() == expected_counts.at(suite));
    for (const RelationResult& rel : report.relations) {
      CAPTURE(rel.id);
      CHECK(rel.passed);
      CHECK(rel.witness.empty());
    }
    CHECK(std::is_sorted(report.relations.begin(), report.relations.end(),
                         [](const RelationResult& a, const RelationResult& b) {
                           return a.id < b.id;
                         }));
  }
}

TEST_CASE("reports echo parameters in insertion order") {
  SuiteReport commutation = run("commutation");
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"n", "4"},
      {"depth", "6"},
      {"seed", "0"},
      {"beta", "wreath(tau^-1, tau^-3, id, tau^-2; (0 2)(1 3))"},
      {"xs", "-4..4"},
  };
  CHECK(commutation.params == expected);

  SuiteReport delta = run("delta", {{"n", "6"}, {"seed", "9"}});
  const std::vector<std::pair<std::string, std::string>> expected_delta = {{"n", "6"},
                                                                           {"seed", "9"}};
  CHECK(delta.params == expected_delta);
  CHECK(delta.seed == 9);
  CHECK(delta.passed());

  SuiteReport wreath = run("wreath", {{"m", "3"}, {"n", "3"}, {"s", "1"}});
  CHECK(wreath.passed());
  REQUIRE(wreath.params.size() == 4);
  CHECK(wreath.params[0] == std::pair<std::string, std::string>{"m", "3"});
  CHECK(wreath.params[1] == std::pair<std::string, std::string>{"n", "3"});
  CHECK(wreath.params[2] == std::pair<std::string, std::string>{"s", "1"});
}

TEST_CASE("suites accept overridden parameters") {
  CHECK(run("powers", {{"n", "3"}}).passed());
  CHECK(run("theorem-b", {{"s", "3"}}).passed());
  CHECK(run("theorem-b", {{"s", "5"}, {"xi", "5"}}).passed());
  CHECK(run("wreath", {{"m", "2"}, {"n", "6"}, {"s", "3"}}).passed());
  CHECK(run("symmetric", {{"n", "5"}}).relations.size() == 5);
}

TEST_CASE("a beta violating the commuting-conjugates hypothesis fails loudly") {
  SuiteReport report =
      run("commutation", {{"beta", "conj(tau, wreath(rigid((0 1)), id, id, id;))"}});
  CHECK_FALSE(report.passed());

  auto hypothesis = std::find_if(report.relations.begin(), report.relations.end(),
                                 [](const RelationResult& r) { return r.id == "hypothesis"; });
  REQUIRE(hypothesis != report.relations.end());
  CHECK_FALSE(hypothesis->passed);
  CHECK(hypothesis->witness.find("x=") == 0);

  std::string text = report.to_text();
  CHECK(text.find(" FAIL witness=") != std::string::npos);
  const std::string verdict = "SUITE commutation FAIL\n";
  CHECK(text.rfind(verdict) == text.size() - verdict.size());
}

TEST_CASE("to_text lists one relation per line and a suite verdict") {
  SuiteReport report = run("wreath");
  std::string text = report.to_text();
  std::size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == report.relations.size() + 1);
  const std::string verdict = "SUITE wreath PASS\n";
  CHECK(text.rfind(verdict) == text.size() - verdict.size());
  std::size_t pos = 0;
  for (const RelationResult& rel : report.relations) {
    std::string line = "RELATION " + rel.id + " PASS\n";
    std::size_t found = text.find(line, pos);
    REQUIRE(found != std::string::npos);
    pos = found + line.size();
  }
}

TEST_CASE("unknown suites and parameters are rejected") {
  CHECK_THROWS_AS(run("nope"), std::invalid_argument);
  CHECK_THROWS_WITH(run("nope"), "unknown suite 'nope'");
  CHECK_THROWS_WITH(run("delta", {{"x", "1"}}), "unknown param 'x' for suite delta");
  CHECK_THROWS_AS(run("powers", {{"beta", "tau"}}), std::invalid_argument);
}

TEST_CASE("malformed beta expressions become usage errors") {
  try {
    run("commutation", {{"beta", "frob("}});
    FAIL_CHECK("expected invalid_argument");
  } catch (const std::invalid_argument& ex) {
    CHECK(std::string(ex.what()).find("param beta:") == 0);
  }
}

TEST_CASE("degree restrictions are enforced") {
  CHECK_THROWS_WITH(run("n4", {{"n", "5"}}), "suite n4 runs at degree 4 only");
  CHECK_THROWS_WITH(run("symmetric", {{"n", "6"}}),
                    "suite symmetric needs a prime power degree, got 6");
  CHECK_THROWS_WITH(run("even-half", {{"n", "5"}}), "suite even-half needs an even degree");
  CHECK_THROWS_WITH(run("transposition", {{"n", "3"}}),
                    "suite transposition needs an even degree");
  CHECK_THROWS_AS(run("powers", {{"budget", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(run("normalizer", {{"depth", "99"}}), std::invalid_argument);
}

TEST_CASE("seeds are recorded and reproducible") {
  SuiteReport a = run("symmetric", {{"seed", "42"}});
  SuiteReport b = run("symmetric", {{"seed", "42"}});
  CHECK(a.seed == 42);
  CHECK(a.passed());
  CHECK(a.to_text() == b.to_text());
}
