#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "belgames/errors.hpp"
#include "belgames/gamedoc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPrecondition = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw belgames::ValidationError("cannot open game file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for coalitional games under belief-function "
               "uncertainty"};
  app.require_subcommand(1);

  std::string gamePath;
  std::string contractName;
  std::string format = "json";
  bool strong = false;

  const std::vector<std::string> plainCommands = {
      "validate",      "expected-game", "shapley",     "core-vertices",
      "exante-geometry", "prenucleolus", "convexity"};
  const std::vector<std::string> contractCommands = {
      "exante-check", "kernel-check", "bargaining-check", "excess-table"};

  for (const auto& name : plainCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--game", gamePath, "game document (JSON)")->required();
    sub->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
  }
  for (const auto& name : contractCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--game", gamePath, "game document (JSON)")->required();
    sub->add_option("--contract", contractName, "named contract to test");
    sub->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    if (name == "bargaining-check") {
      sub->add_flag("--strong", strong,
                    "require counterblocking from outside the blocker");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    belgames::AnalysisOptions options;
    options.command = app.get_subcommands().front()->get_name();
    options.contractName = contractName;
    options.strong = strong;

    const belgames::ParsedDocument doc =
        belgames::parse_game_document(read_file(gamePath));
    const belgames::AnalysisReport report =
        belgames::run_analysis(doc, options);
    if (format == "text") {
      std::cout << report.text;
    } else {
      std::cout << report.payload.dump(2) << "\n";
    }
    return kExitOk;
  } catch (const belgames::PreconditionError& err) {
    std::cerr << "precondition error: " << err.what() << "\n";
    return kExitPrecondition;
  } catch (const belgames::ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  }
}
