#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "rydw/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-dressed excitation-boson model: sweet-spot spectra and W-state preparation"};
  app.set_version_flag("--version", std::string("rydw ") + rydw::kVersion);
  app.require_subcommand(1);

  std::string config;
  const std::pair<const char*, const char*> commands[] = {
      {"derive", "Print the derived model parameters"},
      {"scan", "Sector-resolved ground-state scan (fig2.csv, fig3.csv, fig4.csv)"},
      {"protocol", "Driven W-state preparation trace (trace.csv)"},
      {"sweetspot-check", "Vertex-zero and exact-eigenstate checks; prints PASS/FAIL"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->add_option("config", config, "JSON run configuration")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rydw::cli::kUsageError;
  }
  return rydw::cli::dispatch(app.get_subcommands().front()->get_name(), config, std::cout, std::cerr);
}
