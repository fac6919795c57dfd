#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lpbesov/config.hpp"
#include "lpbesov/suites.hpp"

namespace {

int print_diagnostics(const lpbesov::LoadedConfig& loaded) {
  for (const lpbesov::Diagnostic& d : loaded.diagnostics)
    std::cout << (d.fatal ? "error" : "note") << ": " << d.field << ": " << d.message << "\n";
  return loaded.runnable() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dyadic filter banks, Besov norms, and kernel-estimate checks on finite Cayley graphs"};
  app.require_subcommand(1);

  std::string run_config, validate_config;
  CLI::App* cmd_run = app.add_subcommand("run", "Run the configured suites and write reports");
  cmd_run->add_option("config", run_config, "JSON experiment config")->required();
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "Check a config and list diagnostics");
  cmd_validate->add_option("config", validate_config, "JSON experiment config")->required();
  app.add_subcommand("list-suites", "Print the known suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("list-suites")) {
      for (const std::string& s : lpbesov::known_suites()) std::cout << s << "\n";
      return 0;
    }
    if (app.got_subcommand("validate"))
      return print_diagnostics(lpbesov::load_config(validate_config));

    lpbesov::LoadedConfig loaded = lpbesov::load_config(run_config);
    if (!loaded.runnable()) return print_diagnostics(loaded);
    for (const lpbesov::Diagnostic& d : loaded.diagnostics)
      std::cout << "note: " << d.field << ": " << d.message << "\n";
    lpbesov::apply_env_overrides(loaded.config);
    const int code = lpbesov::run_all(loaded.config);
    std::cout << (code == 0 ? "all suites passed" : "at least one suite failed")
              << "; reports in " << loaded.config.output_dir << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
