#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "belgames/coregeo.hpp"
#include "belgames/errors.hpp"
#include "belgames/gamedoc.hpp"
#include "support/builders.hpp"

using namespace belgames;

namespace {

std::string fixture_text() {
  const char* src = std::getenv("BELGAMES_SRC");
  const std::string root = src ? src : ".";
  std::ifstream in(root + "/tests/fixtures/symmetric_two_state.json");
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Minimal two-player document, tweakable per test.
std::string tiny(const std::string& massLine) {
  return std::string(R"({
    "players": ["a", "b"],
    "states": ["x"],
    "priors": {"common": [)") +
         massLine + R"(]},
    "values": {"x": [
      {"coalition": ["a"], "value": "1"},
      {"coalition": ["b"], "value": "0"},
      {"coalition": ["a", "b"], "value": "3"}
    ]}
  })";
}

}  // namespace

TEST_CASE("fixture parses into the expected game") {
  const ParsedDocument doc = parse_game_document(fixture_text());
  CHECK(doc.game.numPlayers() == 3);
  CHECK(doc.game.numStates() == 2);
  CHECK(doc.game.probabilisticPrior());
  const TUGame v = expected_game(doc.game);
  CHECK(v.worth(0b001) == 1);
  CHECK(v.worth(0b011) == 5);
  CHECK(v.worth(0b111) == 9);
  REQUIRE(doc.contracts.count("balanced") == 1);
  CHECK(exante_membership(doc.game, doc.contracts.at("balanced")));
  CHECK_FALSE(exante_membership(doc.game, doc.contracts.at("lopsided")));
}

TEST_CASE("rationals roundtrip through parse and serialization") {
  const ParsedDocument doc = parse_game_document(fixture_text());
  AnalysisOptions options;
  options.command = "expected-game";
  const AnalysisReport report = run_analysis(doc, options);
  // Values appear as exact strings, never as numbers.
  CHECK(report.payload["values"][0]["value"] == "1");
  for (const auto& entry : report.payload["values"]) {
    CHECK(entry["value"].is_string());
  }
}

TEST_CASE("mass errors carry the field and the reason") {
  CHECK_THROWS_WITH_AS(
      parse_game_document(tiny(R"({"on": ["x"], "mass": "9/10"})")),
      "priors.common: mass must sum to 1", ValidationError);
  CHECK_THROWS_AS(parse_game_document(tiny(R"({"on": ["y"], "mass": "1"})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_game_document(tiny(R"({"on": ["x"], "mass": "0.5"})")),
                  ValidationError);
}

TEST_CASE("full support diagnostic for probability priors") {
  const std::string doc = R"({
    "players": ["a"],
    "states": ["x", "y"],
    "priors": {"common": [{"on": ["x"], "mass": "1"}]},
    "values": {
      "x": [{"coalition": ["a"], "value": "1"}],
      "y": [{"coalition": ["a"], "value": "2"}]
    }
  })";
  try {
    parse_game_document(doc);
    FAIL("expected a validation error");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find("full support") != std::string::npos);
  }
}

TEST_CASE("missing coalition entries are named") {
  const std::string doc = R"({
    "players": ["a", "b"],
    "states": ["x"],
    "priors": {"common": [{"on": ["x"], "mass": "1"}]},
    "values": {"x": [
      {"coalition": ["a"], "value": "1"},
      {"coalition": ["a", "b"], "value": "3"}
    ]}
  })";
  CHECK_THROWS_WITH_AS(parse_game_document(doc),
                       "values.x: missing coalition {b}", ValidationError);
}

TEST_CASE("unknown labels and duplicates are rejected") {
  const std::string badPlayer = R"({
    "players": ["a", "b"],
    "states": ["x"],
    "priors": {"common": [{"on": ["x"], "mass": "1"}]},
    "values": {"x": [
      {"coalition": ["a"], "value": "1"},
      {"coalition": ["c"], "value": "0"},
      {"coalition": ["a", "b"], "value": "3"}
    ]}
  })";
  CHECK_THROWS_AS(parse_game_document(badPlayer), ValidationError);
  CHECK_THROWS_AS(parse_game_document("not json at all"), ValidationError);

  const std::string typo = R"({
    "players": ["a"],
    "states": ["x"],
    "priors": {"common": [{"on": ["x"], "mass": "1"}]},
    "values": {"x": [{"coalition": ["a"], "value": "1"}]},
    "contract": {}
  })";
  CHECK_THROWS_WITH_AS(parse_game_document(typo),
                       "document: unknown field 'contract'", ValidationError);
}

TEST_CASE("per-player priors parse and flag the absence of a common prior") {
  const std::string doc = R"({
    "players": ["a", "b"],
    "states": ["x", "y"],
    "priors": {"per_player": {
      "a": [{"on": ["x"], "mass": "1/2"}, {"on": ["y"], "mass": "1/2"}],
      "b": [{"on": ["x", "y"], "mass": "1"}]
    }},
    "values": {
      "x": [
        {"coalition": ["a"], "value": "1"},
        {"coalition": ["b"], "value": "0"},
        {"coalition": ["a", "b"], "value": "3"}
      ],
      "y": [
        {"coalition": ["a"], "value": "0"},
        {"coalition": ["b"], "value": "1"},
        {"coalition": ["a", "b"], "value": "2"}
      ]
    }
  })";
  const ParsedDocument parsed = parse_game_document(doc);
  CHECK_FALSE(parsed.game.commonPrior());
  AnalysisOptions options;
  options.command = "expected-game";
  CHECK_THROWS_AS(run_analysis(parsed, options), PreconditionError);

  options.command = "convexity";
  const AnalysisReport report = run_analysis(parsed, options);
  CHECK(report.payload["warnings"].size() == 1);
  CHECK_FALSE(report.payload.contains("exante_convex"));
}

TEST_CASE("contract commands demand a known name") {
  const ParsedDocument doc = parse_game_document(fixture_text());
  AnalysisOptions options;
  options.command = "exante-check";
  CHECK_THROWS_AS(run_analysis(doc, options), ValidationError);
  options.contractName = "nope";
  CHECK_THROWS_AS(run_analysis(doc, options), ValidationError);
  options.contractName = "balanced";
  const AnalysisReport report = run_analysis(doc, options);
  CHECK(report.payload["verdict"] == "member");
  CHECK(report.payload["test"] == "necessary-and-sufficient");
}

TEST_CASE("reports are byte-stable across runs") {
  const ParsedDocument doc = parse_game_document(fixture_text());
  for (const char* cmd :
       {"validate", "expected-game", "exante-geometry", "prenucleolus"}) {
    AnalysisOptions options;
    options.command = cmd;
    const std::string once = run_analysis(doc, options).payload.dump(2);
    const std::string twice = run_analysis(doc, options).payload.dump(2);
    CHECK(once == twice);
  }
}

TEST_CASE("bargaining report carries verdicts per coalition") {
  const ParsedDocument doc = parse_game_document(fixture_text());
  AnalysisOptions options;
  options.command = "bargaining-check";
  options.contractName = "lopsided";
  const AnalysisReport report = run_analysis(doc, options);
  CHECK(report.payload["member"] == false);
  bool sawLegitimate = false;
  for (const auto& entry : report.payload["coalitions"]) {
    if (entry["verdict"] == "LegitimatelyBlocks") sawLegitimate = true;
  }
  CHECK(sawLegitimate);

  options.strong = true;
  const AnalysisReport strongReport = run_analysis(doc, options);
  CHECK(strongReport.payload["strong"] == true);
  CHECK(strongReport.payload["member"] == false);
}
