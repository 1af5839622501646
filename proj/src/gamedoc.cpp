#include "belgames/gamedoc.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "belgames/coregeo.hpp"
#include "belgames/errors.hpp"
#include "belgames/solutions.hpp"

namespace belgames {

namespace {

using nlohmann::json;

const json& require_field(const json& node, const char* name,
                          const std::string& where) {
  const auto it = node.find(name);
  if (it == node.end()) {
    throw ValidationError(where + ": missing required field '" + name + "'");
  }
  return *it;
}

std::vector<std::string> string_list(const json& node,
                                     const std::string& where) {
  if (!node.is_array() || node.empty()) {
    throw ValidationError(where + ": expected a nonempty array of strings");
  }
  std::vector<std::string> out;
  for (const auto& v : node) {
    if (!v.is_string()) {
      throw ValidationError(where + ": expected a string entry");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

Rational rational_field(const json& node, const std::string& where) {
  if (!node.is_string()) {
    throw ValidationError(where +
                          ": rational values must be strings like \"3/4\"");
  }
  try {
    return parse_rational(node.get<std::string>());
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
}

template <typename Space>
SubsetMask label_subset(const json& node, const Space& space,
                        const std::string& where) {
  SubsetMask mask = 0;
  for (const auto& label : string_list(node, where)) {
    const auto idx = space.indexOf(label);
    if (!idx) {
      throw ValidationError(where + ": unknown label '" + label + "'");
    }
    if (mask_contains(mask, *idx)) {
      throw ValidationError(where + ": label '" + label + "' listed twice");
    }
    mask |= singleton_mask(*idx);
  }
  return mask;
}

MassFunction parse_mass(const json& entries, const StateSpace& states,
                        const std::string& where) {
  if (!entries.is_array()) {
    throw ValidationError(where + ": expected an array of mass entries");
  }
  SetFunctionTable table(states.tableSize(), Rational(0));
  std::vector<bool> seen(states.tableSize(), false);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string entryWhere = where + "[" + std::to_string(k) + "]";
    const json& entry = entries[k];
    if (!entry.is_object()) {
      throw ValidationError(entryWhere + ": expected an object");
    }
    const SubsetMask on =
        label_subset(require_field(entry, "on", entryWhere), states,
                     entryWhere + ".on");
    if (on == kEmptyMask) {
      throw ValidationError(entryWhere + ": mass on the empty set");
    }
    if (seen[on]) {
      throw ValidationError(entryWhere + ": subset listed twice");
    }
    seen[on] = true;
    table[on] = rational_field(require_field(entry, "mass", entryWhere),
                               entryWhere + ".mass");
  }
  try {
    return MassFunction(std::move(table));
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
}

TUGame parse_state_game(const json& entries, const PlayerSet& players,
                        const std::string& where) {
  if (!entries.is_array()) {
    throw ValidationError(where + ": expected an array of coalition values");
  }
  SetFunctionTable worth(std::size_t{1} << players.size(), Rational(0));
  std::vector<bool> seen(worth.size(), false);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string entryWhere = where + "[" + std::to_string(k) + "]";
    const json& entry = entries[k];
    if (!entry.is_object()) {
      throw ValidationError(entryWhere + ": expected an object");
    }
    const SubsetMask coalition =
        label_subset(require_field(entry, "coalition", entryWhere), players,
                     entryWhere + ".coalition");
    if (coalition == kEmptyMask) {
      throw ValidationError(entryWhere +
                            ": the empty coalition is implicit with value 0");
    }
    if (seen[coalition]) {
      throw ValidationError(entryWhere + ": coalition listed twice");
    }
    seen[coalition] = true;
    worth[coalition] = rational_field(
        require_field(entry, "value", entryWhere), entryWhere + ".value");
  }
  for (SubsetMask s = 1; s < worth.size(); ++s) {
    if (!seen[s]) {
      std::string missing;
      for (std::size_t i : mask_members(s)) {
        if (!missing.empty()) missing += ",";
        missing += players.label(i);
      }
      throw ValidationError(where + ": missing coalition {" + missing + "}");
    }
  }
  return TUGame(players, std::move(worth));
}

Contract parse_contract(const json& node, const PlayerSet& players,
                        std::size_t numStates, const std::string& where) {
  if (!node.is_object()) {
    throw ValidationError(where + ": expected an object of payoff rows");
  }
  for (const auto& [key, value] : node.items()) {
    if (!players.indexOf(key)) {
      throw ValidationError(where + ": unknown player '" + key + "'");
    }
  }
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < players.size(); ++i) {
    const auto it = node.find(players.label(i));
    if (it == node.end()) {
      throw ValidationError(where + ": missing payoff row for player '" +
                            players.label(i) + "'");
    }
    const std::string rowWhere = where + "." + players.label(i);
    if (!it->is_array() || it->size() != numStates) {
      throw ValidationError(rowWhere + ": expected one value per state");
    }
    std::vector<Rational> row;
    for (std::size_t j = 0; j < numStates; ++j) {
      row.push_back(rational_field((*it)[j],
                                   rowWhere + "[" + std::to_string(j) + "]"));
    }
    rows.push_back(std::move(row));
  }
  return Contract::grand(players.size(), std::move(rows));
}

}  // namespace

ParsedDocument parse_game_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("document is not valid JSON: ") +
                          err.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("document root must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "players" && key != "states" && key != "priors" &&
        key != "values" && key != "contracts") {
      throw ValidationError("document: unknown field '" + key + "'");
    }
  }

  const PlayerSet players(
      string_list(require_field(doc, "players", "document"), "players"));
  const StateSpace states(
      string_list(require_field(doc, "states", "document"), "states"));

  const json& priorsNode = require_field(doc, "priors", "document");
  if (!priorsNode.is_object()) {
    throw ValidationError("priors: expected an object");
  }
  for (const auto& [key, value] : priorsNode.items()) {
    if (key != "common" && key != "per_player") {
      throw ValidationError("priors: unknown field '" + key + "'");
    }
  }
  std::vector<MassFunction> priors;
  if (priorsNode.contains("common")) {
    const MassFunction common =
        parse_mass(priorsNode["common"], states, "priors.common");
    priors.assign(players.size(), common);
  } else if (priorsNode.contains("per_player")) {
    const json& per = priorsNode["per_player"];
    if (!per.is_object()) {
      throw ValidationError("priors.per_player: expected an object");
    }
    for (const auto& [key, value] : per.items()) {
      if (!players.indexOf(key)) {
        throw ValidationError("priors.per_player: unknown player '" + key +
                              "'");
      }
    }
    for (std::size_t i = 0; i < players.size(); ++i) {
      const auto it = per.find(players.label(i));
      if (it == per.end()) {
        throw ValidationError("priors.per_player: missing prior for player '" +
                              players.label(i) + "'");
      }
      priors.push_back(
          parse_mass(*it, states, "priors.per_player." + players.label(i)));
    }
  } else {
    throw ValidationError("priors: need either 'common' or 'per_player'");
  }

  const json& valuesNode = require_field(doc, "values", "document");
  if (!valuesNode.is_object()) {
    throw ValidationError("values: expected an object keyed by state");
  }
  for (const auto& [key, value] : valuesNode.items()) {
    if (!states.indexOf(key)) {
      throw ValidationError("values: unknown state '" + key + "'");
    }
  }
  std::vector<TUGame> stateGames;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto it = valuesNode.find(states.label(j));
    if (it == valuesNode.end()) {
      throw ValidationError("values: missing state '" + states.label(j) + "'");
    }
    stateGames.push_back(
        parse_state_game(*it, players, "values." + states.label(j)));
  }

  BelGame game(players, states, std::move(priors), std::move(stateGames));

  std::map<std::string, Contract> contracts;
  if (doc.contains("contracts")) {
    const json& contractsNode = doc["contracts"];
    if (!contractsNode.is_object()) {
      throw ValidationError("contracts: expected an object");
    }
    for (const auto& [name, value] : contractsNode.items()) {
      contracts.emplace(name, parse_contract(value, game.players(),
                                             game.numStates(),
                                             "contracts." + name));
    }
  }
  return ParsedDocument{std::move(game), std::move(contracts)};
}

namespace {

json rational_array(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

json player_subset_json(const BelGame& game, SubsetMask mask) {
  json arr = json::array();
  for (std::size_t i : mask_members(mask)) arr.push_back(game.players().label(i));
  return arr;
}

json state_subset_json(const BelGame& game, SubsetMask mask) {
  json arr = json::array();
  for (std::size_t j : mask_members(mask)) arr.push_back(game.states().label(j));
  return arr;
}

json contract_json(const BelGame& game, const Contract& contract) {
  json obj = json::object();
  for (std::size_t i = 0; i < game.numPlayers(); ++i) {
    obj[game.players().label(i)] = rational_array(contract.payoffRow(i));
  }
  return obj;
}

std::string player_subset_text(const BelGame& game, SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : mask_members(mask)) {
    if (!first) out += ",";
    out += game.players().label(i);
    first = false;
  }
  return out + "}";
}

std::string state_subset_text(const BelGame& game, SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t j : mask_members(mask)) {
    if (!first) out += ",";
    out += game.states().label(j);
    first = false;
  }
  return out + "}";
}

std::string joined(const std::vector<Rational>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += " ";
    out += to_string(values[i]);
  }
  return out;
}

const Contract& named_contract(const ParsedDocument& doc,
                               const AnalysisOptions& options) {
  if (options.contractName.empty()) {
    throw ValidationError("command '" + options.command +
                          "' needs --contract <name>");
  }
  const auto it = doc.contracts.find(options.contractName);
  if (it == doc.contracts.end()) {
    throw ValidationError("unknown contract '" + options.contractName + "'");
  }
  return it->second;
}

std::string verdict_name(BlockVerdict v) {
  switch (v) {
    case BlockVerdict::NoBlock:
      return "NoBlock";
    case BlockVerdict::Blocks:
      return "Blocks";
    case BlockVerdict::LegitimatelyBlocks:
      return "LegitimatelyBlocks";
  }
  return "NoBlock";
}

struct ReportBuilder {
  const ParsedDocument& doc;
  const AnalysisOptions& options;
  const BelGame& game;
  json payload = json::object();
  std::vector<std::string> warnings;
  std::ostringstream text;

  ReportBuilder(const ParsedDocument& d, const AnalysisOptions& o)
      : doc(d), options(o), game(d.game) {
    payload["command"] = o.command;
    text << "command: " << o.command << "\n";
  }

  AnalysisReport finish() {
    json warn = json::array();
    for (const auto& w : warnings) {
      warn.push_back(w);
      text << "warning: " << w << "\n";
    }
    payload["warnings"] = warn;
    return AnalysisReport{std::move(payload), text.str()};
  }

  void validate() {
    payload["players"] = json(game.players().labels());
    payload["states"] = json(game.states().labels());
    payload["common_prior"] = game.commonPrior();
    payload["probabilistic_prior"] = game.probabilisticPrior();
    json priors = json::object();
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      json entries = json::array();
      for (SubsetMask e : focal_elements(game.prior(i)).elements) {
        json entry = json::object();
        entry["on"] = state_subset_json(game, e);
        entry["mass"] = to_string(game.prior(i).at(e));
        entries.push_back(std::move(entry));
      }
      priors[game.players().label(i)] = std::move(entries);
    }
    payload["priors"] = std::move(priors);
    json names = json::array();
    for (const auto& [name, c] : doc.contracts) names.push_back(name);
    payload["contracts"] = std::move(names);

    text << "players: " << game.numPlayers()
         << ", states: " << game.numStates() << "\n";
    text << "common prior: " << (game.commonPrior() ? "yes" : "no")
         << ", probabilistic: " << (game.probabilisticPrior() ? "yes" : "no")
         << "\n";
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      text << "prior " << game.players().label(i) << ":";
      for (SubsetMask e : focal_elements(game.prior(i)).elements) {
        text << " " << state_subset_text(game, e) << "="
             << to_string(game.prior(i).at(e));
      }
      text << "\n";
    }
    text << "document is valid\n";
  }

  void expected_game_report() {
    const TUGame expected = expected_game(game);
    json values = json::array();
    for (SubsetMask s = 1; s <= game.grandCoalition(); ++s) {
      json entry = json::object();
      entry["coalition"] = player_subset_json(game, s);
      entry["value"] = to_string(expected.worth(s));
      values.push_back(std::move(entry));
    }
    payload["values"] = std::move(values);
    for (SubsetMask s = 1; s <= game.grandCoalition(); ++s) {
      text << player_subset_text(game, s) << " = "
           << to_string(expected.worth(s)) << "\n";
    }
  }

  void shapley() {
    const Contract contract = shapley_contract(game);
    payload["contract"] = contract_json(game, contract);
    json values = json::object();
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      values[game.players().label(i)] =
          to_string(game.playerChoquetValue(contract, i));
    }
    payload["choquet_values"] = std::move(values);
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      text << "player " << game.players().label(i) << ": "
           << joined(contract.payoffRow(i)) << "  (choquet "
           << to_string(game.playerChoquetValue(contract, i)) << ")\n";
    }
  }

  void core_vertices_report() {
    const TUGame expected = expected_game(game);
    json arr = json::array();
    for (const PayoffVector& v : core_vertices(expected)) {
      arr.push_back(rational_array(v));
      text << "(" << joined(v) << ")\n";
    }
    if (arr.empty()) text << "core of the expected game is empty\n";
    payload["vertices"] = std::move(arr);
  }

  void exante_check() {
    const Contract& contract = named_contract(doc, options);
    payload["contract"] = options.contractName;
    const bool feasible = game.feasible(contract);
    payload["feasible"] = feasible;
    if (game.probabilisticPrior()) {
      const bool member = exante_membership(game, contract);
      payload["test"] = "necessary-and-sufficient";
      payload["verdict"] = member ? "member" : "not-member";
    } else {
      game.requireCommonPrior("exante-check");
      warnings.push_back(
          "common prior is not a probability: only the one-sided sufficient "
          "test is available");
      const bool sufficient = exante_sufficient(game, contract);
      payload["test"] = "sufficient-only";
      payload["verdict"] = sufficient ? "member" : "undetermined";
    }
    text << "contract: " << options.contractName << "\n";
    text << "feasible: " << (feasible ? "yes" : "no") << "\n";
    text << "verdict: " << payload["verdict"].get<std::string>() << "\n";
  }

  void exante_geometry() {
    const CoreVRep rep = exante_core_vrep(game);
    json vertices = json::array();
    const TUGame expected = expected_game(game);
    for (const PayoffVector& v : core_vertices(expected)) {
      vertices.push_back(rational_array(v));
    }
    payload["expected_core_vertices"] = std::move(vertices);
    json basis = json::array();
    for (const auto& w : rep.linealityBasis) basis.push_back(rational_array(w));
    payload["lineality_basis"] = std::move(basis);
    json pseudo = json::array();
    for (const Contract& c : rep.pseudoVertices) {
      pseudo.push_back(contract_json(game, c));
    }
    payload["pseudo_vertices"] = std::move(pseudo);

    text << "lineality dimension: " << rep.linealityBasis.size() << "\n";
    for (const auto& w : rep.linealityBasis) {
      text << "  (" << joined(w) << ")\n";
    }
    text << "pseudo-vertices: " << rep.pseudoVertices.size() << "\n";
    for (const Contract& c : rep.pseudoVertices) {
      text << "  (" << joined(contract_coordinates(c)) << ")\n";
    }
  }

  void prenucleolus() {
    const PrenucleolusContract result = prenucleolus_contract(game);
    const TUGame expected = expected_game(game);
    payload["expected_prenucleolus"] =
        rational_array(prenucleolus_tu(expected));
    payload["contract"] = contract_json(game, result.contract);
    payload["statewise_efficient"] = result.statewiseEfficient;
    if (!game.probabilisticPrior()) {
      warnings.push_back(
          "belief prior: returning the certain contract; per-state "
          "efficiency is not guaranteed");
    }
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      text << "player " << game.players().label(i) << ": "
           << joined(result.contract.payoffRow(i)) << "\n";
    }
    text << "statewise efficient: "
         << (result.statewiseEfficient ? "yes" : "no") << "\n";
  }

  void kernel_check() {
    const Contract& contract = named_contract(doc, options);
    payload["contract"] = options.contractName;
    payload["member"] = kernel_membership(game, contract);
    json surpluses = json::array();
    for (std::size_t i = 0; i < game.numPlayers(); ++i) {
      for (std::size_t j = i + 1; j < game.numPlayers(); ++j) {
        json entry = json::object();
        entry["i"] = game.players().label(i);
        entry["j"] = game.players().label(j);
        entry["s_ij"] = to_string(surplus(game, contract, i, j));
        entry["s_ji"] = to_string(surplus(game, contract, j, i));
        surpluses.push_back(std::move(entry));
      }
    }
    payload["surpluses"] = std::move(surpluses);
    text << "contract: " << options.contractName << "\n";
    text << "member: " << (payload["member"].get<bool>() ? "yes" : "no")
         << "\n";
    for (const auto& entry : payload["surpluses"]) {
      text << "s(" << entry["i"].get<std::string>() << ","
           << entry["j"].get<std::string>()
           << ") = " << entry["s_ij"].get<std::string>() << "   s("
           << entry["j"].get<std::string>() << ","
           << entry["i"].get<std::string>()
           << ") = " << entry["s_ji"].get<std::string>() << "\n";
    }
  }

  void bargaining_check() {
    const Contract& contract = named_contract(doc, options);
    payload["contract"] = options.contractName;
    payload["strong"] = options.strong;
    const bool feasible = game.feasible(contract);
    if (!feasible) {
      warnings.push_back("contract is infeasible");
    }
    bool member = feasible;
    json coalitions = json::array();
    for (SubsetMask s = 1; s <= game.grandCoalition(); ++s) {
      const BlockingReport report =
          legitimate_blocking(game, contract, s, options.strong);
      if (report.verdict == BlockVerdict::LegitimatelyBlocks) member = false;
      json entry = json::object();
      entry["coalition"] = player_subset_json(game, s);
      entry["verdict"] = verdict_name(report.verdict);
      if (report.verdict != BlockVerdict::NoBlock) {
        entry["witness"] = rational_array(report.witnessExpectations);
      }
      if (report.verdict == BlockVerdict::Blocks) {
        json counter = json::array();
        for (SubsetMask c : report.counterblockers) {
          counter.push_back(player_subset_json(game, c));
        }
        entry["counterblockers"] = std::move(counter);
      }
      coalitions.push_back(std::move(entry));
    }
    payload["member"] = member;
    payload["coalitions"] = std::move(coalitions);

    text << "contract: " << options.contractName
         << (options.strong ? " (strong)" : "") << "\n";
    text << "member: " << (member ? "yes" : "no") << "\n";
    for (SubsetMask s = 1; s <= game.grandCoalition(); ++s) {
      const auto& entry = payload["coalitions"][s - 1];
      text << player_subset_text(game, s) << ": "
           << entry["verdict"].get<std::string>() << "\n";
    }
  }

  void convexity() {
    json perState = json::array();
    for (std::size_t j = 0; j < game.numStates(); ++j) {
      json entry = json::object();
      entry["state"] = game.states().label(j);
      entry["convex"] = is_convex_tu(game.stateGame(j));
      perState.push_back(std::move(entry));
      text << "state " << game.states().label(j) << ": "
           << (is_convex_tu(game.stateGame(j)) ? "convex" : "not convex")
           << "\n";
    }
    payload["per_state"] = std::move(perState);
    if (game.commonPrior()) {
      payload["expected_game_convex"] = is_convex_tu(expected_game(game));
      payload["exante_convex"] = is_exante_convex(game);
      text << "expected game: "
           << (payload["expected_game_convex"].get<bool>() ? "convex"
                                                           : "not convex")
           << "\n";
      text << "ex-ante convex: "
           << (payload["exante_convex"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      warnings.push_back(
          "distinct priors: ex-ante convexity needs a common prior");
    }
  }

  void excess_table_report() {
    const Contract& contract = named_contract(doc, options);
    payload["contract"] = options.contractName;
    json excesses = json::array();
    for (SubsetMask s = 0; s <= game.grandCoalition(); ++s) {
      json entry = json::object();
      entry["coalition"] = player_subset_json(game, s);
      entry["value"] = to_string(exante_excess(game, contract, s));
      excesses.push_back(std::move(entry));
    }
    payload["excesses"] = std::move(excesses);
    const ThetaVector th = theta(game, contract);
    payload["theta"] = rational_array(th.values);
    json order = json::array();
    for (SubsetMask s : th.coalitions) {
      order.push_back(player_subset_json(game, s));
    }
    payload["theta_coalitions"] = std::move(order);

    text << "contract: " << options.contractName << "\n";
    for (std::size_t k = 0; k < th.values.size(); ++k) {
      text << player_subset_text(game, th.coalitions[k]) << " = "
           << to_string(th.values[k]) << "\n";
    }
  }
};

}  // namespace

AnalysisReport run_analysis(const ParsedDocument& doc,
                            const AnalysisOptions& options) {
  ReportBuilder builder(doc, options);
  const std::string& cmd = options.command;
  if (cmd == "validate") {
    builder.validate();
  } else if (cmd == "expected-game") {
    builder.expected_game_report();
  } else if (cmd == "shapley") {
    builder.shapley();
  } else if (cmd == "core-vertices") {
    builder.core_vertices_report();
  } else if (cmd == "exante-check") {
    builder.exante_check();
  } else if (cmd == "exante-geometry") {
    builder.exante_geometry();
  } else if (cmd == "prenucleolus") {
    builder.prenucleolus();
  } else if (cmd == "kernel-check") {
    builder.kernel_check();
  } else if (cmd == "bargaining-check") {
    builder.bargaining_check();
  } else if (cmd == "convexity") {
    builder.convexity();
  } else if (cmd == "excess-table") {
    builder.excess_table_report();
  } else {
    throw ValidationError("unknown command '" + cmd + "'");
  }
  return builder.finish();
}

}  // namespace belgames
