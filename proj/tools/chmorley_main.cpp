#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chmorley/harness.hpp"

namespace {

// string-typed flags; values funnel through RunConfig::set so the file format
// and the command line accept identical spellings
struct RawOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--config", raw.config_path, "key = value config file");
  static const char* keys[] = {"eps",       "n",          "k",         "T",
                               "ic",        "init_mode",  "alpha0",    "newton_tol",
                               "newton_max_iter", "snapshots", "out",   "r",
                               "n_ref",     "time_norm",  "svg"};
  for (const char* key : keys) {
    cmd->add_option_function<std::string>(
        "--" + std::string(key),
        [&raw, key](const std::string& value) { raw.overrides.emplace_back(key, value); },
        "override config key '" + std::string(key) + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morley-element Cahn-Hilliard solver and experiment harness"};
  app.require_subcommand(1);

  RawOptions raw;
  std::string command;
  for (const char* name : {"run", "converge", "interface", "energy"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_options(sub, raw);
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  chmorley::RunConfig config;
  config.command = command;
  try {
    if (!raw.config_path.empty()) chmorley::load_config_file(config, raw.config_path);
    for (const auto& [key, value] : raw.overrides) config.set(key, value);
  } catch (const std::exception& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  }

  try {
    return chmorley::dispatch_command(config);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
