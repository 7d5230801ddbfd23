// causabound: bounds on the probability of causation from the command line.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "causabound/commands.hpp"
#include "causabound/report.hpp"

using namespace causabound;

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the probability of causation under basic, mediator and covariate structures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  const std::vector<std::string> methods = {"closed", "oracle", "both"};
  const std::vector<std::string> formats = {"json", "csv"};

  std::string input;
  std::string mode = "full";
  std::string method = "closed";
  std::string output = "json";

  auto* bound = app.add_subcommand("bound", "Bound PC for a scenario (.json) or counts (.csv)");
  bound->add_option("input", input, "Scenario or contingency file")->required();
  bound->add_option("--mode", mode, "Analysis mode")->check(CLI::IsMember({"full", "ignore-mediator", "ignore-covariate", "ignore-both"}));
  bound->add_option("--method", method, "closed, oracle or both")->check(CLI::IsMember(methods));
  bound->add_option("--output", output, "json or csv")->check(CLI::IsMember(formats));

  auto* audit = app.add_subcommand("audit", "Compare the correct interval with every biased analysis");
  audit->add_option("input", input, "Scenario or contingency file")->required();
  audit->add_option("--method", method, "closed, oracle or both")->check(CLI::IsMember(methods));
  audit->add_option("--output", output, "json or csv")->check(CLI::IsMember(formats));

  std::string structure;
  auto* estimate = app.add_subcommand("estimate", "Estimate a scenario from contingency counts");
  estimate->add_option("input", input, "Contingency CSV")->required();
  estimate->add_option("--structure", structure, "Override the structure implied by the header")
      ->check(CLI::IsMember({"basic", "mediator", "covariate", "mediator_covariate"}));

  OracleCheckOptions check;
  auto* oracle_check = app.add_subcommand("oracle-check", "Closed form vs. brute-force oracle on random scenarios");
  oracle_check->add_option("--seed", check.seed, "Generator seed");
  oracle_check->add_option("--trials", check.trials, "Scenarios per structure")->check(CLI::PositiveNumber);
  oracle_check->add_flag("--serial", check.serial, "Use the serial reference sweep");

  bool demo_json = false;
  auto* demo = app.add_subcommand("demo", "Reproduce the worked examples");
  demo->add_flag("--json", demo_json, "Machine-readable bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (*bound) {
    return cmd_bound({input, parse_mode(mode), parse_methods(method), parse_output_format(output)}, std::cout,
                     std::cerr);
  }
  if (*audit) return cmd_audit({input, parse_methods(method), parse_output_format(output)}, std::cout, std::cerr);
  if (*estimate) {
    std::optional<Structure> chosen;
    if (!structure.empty()) chosen = parse_structure(structure);
    return cmd_estimate(input, chosen, std::cout, std::cerr);
  }
  if (*oracle_check) return cmd_oracle_check(check, std::cout, std::cerr);
  if (*demo) return cmd_demo(demo_json, std::cout, std::cerr);
  return kExitInputError;
}
