// ppdyn <command> --config <path> --out <dir>
#include "ppdyn/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
  CLI::App app{"Predator-prey dynamics toolkit"};
  app.require_subcommand(1);
  std::string config, out;
  const std::map<std::string, std::string> help = {
      {"simulate", "integrate from [simulate] x1, x2"},
      {"equilibria", "list and classify all equilibria"},
      {"sweep", "one-parameter sweep with bifurcation detection"},
      {"separatrix", "trace W^s(E0) and W^u(E1) and compare them"},
      {"extinction", "finite-time extinction criterion and runs from [extinction]"},
      {"refuge-threshold", "refuge level that rules out extinction from [extinction] x1"},
      {"verify-assumptions", "numeric checks of the structural assumptions on f and g"},
  };
  for (const auto& name : ppdyn::command_names()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : ppdyn::kExitConfig;
  }
  return ppdyn::run_command_file(app.get_subcommands().front()->get_name(), config, out, std::cerr);
}
