// pcadca: PCA-driven signal categorisation feeding a deterministic
// Dendritic Cell Algorithm, with segment-level ROC evaluation.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "pcadca/config.hpp"
#include "pcadca/error.hpp"
#include "pcadca/pipeline.hpp"

namespace {

struct Command {
  CLI::App* app = nullptr;
  std::string config_file;
  std::map<std::string, std::string> flags;
};

void add_flags(Command& cmd) {
  cmd.app->add_option("--config", cmd.config_file, "key=value configuration file");
  for (const auto& key : pcadca::config_keys()) {
    cmd.app->add_option("--" + key, cmd.flags[key], "overrides '" + key + "' from the config");
  }
}

pcadca::RunConfig build_config(const Command& cmd) {
  pcadca::RunConfig config;
  if (!cmd.config_file.empty()) pcadca::apply_config_file(config, cmd.config_file);
  for (const auto& key : pcadca::config_keys()) {
    if (cmd.app->count("--" + key) > 0) pcadca::apply_setting(config, key, cmd.flags.at(key));
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PCA-categorised Dendritic Cell Algorithm anomaly detection"};
  app.require_subcommand(1);

  Command stats{app.add_subcommand("stats", "describe raw and resampled attributes")};
  Command analyse{app.add_subcommand("analyse", "PCA ranking and signal categorisation")};
  Command run{app.add_subcommand("run", "full pipeline: K_alpha, segment classification, ROC")};
  for (Command* c : {&stats, &analyse, &run}) add_flags(*c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (stats.app->parsed()) {
      pcadca::cmd_stats(build_config(stats), std::cout);
    } else if (analyse.app->parsed()) {
      pcadca::cmd_analyse(build_config(analyse), std::cout);
    } else {
      pcadca::cmd_run(build_config(run), std::cout);
    }
  } catch (const pcadca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pcadca::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
