#ifndef BELGAMES_GAMEDOC_HPP
#define BELGAMES_GAMEDOC_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "belgames/games.hpp"

namespace belgames {

// A parsed game document: the validated game plus its named contracts.
struct ParsedDocument {
  BelGame game;
  std::map<std::string, Contract> contracts;
};

// Parses the JSON game document format (see README). Every invariant
// violation raises ValidationError with a message naming the offending
// field.
ParsedDocument parse_game_document(const std::string& text);

struct AnalysisOptions {
  std::string command;
  std::string contractName;  // for the contract-taking commands
  bool strong = false;       // bargaining-check only
};

struct AnalysisReport {
  nlohmann::json payload;  // machine form; serialize with dump(2)
  std::string text;        // human form
};

// Runs one of: validate, expected-game, shapley, core-vertices,
// exante-check, exante-geometry, prenucleolus, kernel-check,
// bargaining-check, convexity, excess-table.
AnalysisReport run_analysis(const ParsedDocument& doc,
                            const AnalysisOptions& options);

}  // namespace belgames

#endif
